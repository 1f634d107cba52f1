#include "xpathlog/bindings.hpp"

#include <algorithm>
#include <map>

namespace xpathlog {

const Value* lookup(const Tuple& t, std::string_view var) {
  auto it = std::lower_bound(t.begin(), t.end(), var, [](const auto& p, std::string_view v) { return p.first < v; });
  if (it == t.end() || it->first != var) return nullptr;
  return &it->second;
}

Tuple with_binding(Tuple t, const std::string& var, Value v) {
  auto it = std::lower_bound(t.begin(), t.end(), var, [](const auto& p, const std::string& k) { return p.first < k; });
  if (it != t.end() && it->first == var) {
    it->second = std::move(v);
  } else {
    t.insert(it, {var, std::move(v)});
  }
  return t;
}

std::optional<Tuple> merge(const Tuple& a, const Tuple& b) {
  Tuple out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->first < j->first) {
      out.push_back(*i++);
    } else if (j->first < i->first) {
      out.push_back(*j++);
    } else {
      if (!(i->second == j->second)) return std::nullopt;
      out.push_back(*i++);
      ++j;
    }
  }
  out.insert(out.end(), i, a.end());
  out.insert(out.end(), j, b.end());
  return out;
}

bool subsumed_by(const Tuple& a, const Tuple& b) {
  for (const auto& [var, v] : a) {
    const Value* w = lookup(b, var);
    if (w == nullptr || !(*w == v)) return false;
  }
  return true;
}

Tuple project(const Tuple& t, const std::set<std::string>& vars) {
  Tuple out;
  for (const auto& p : t) {
    if (vars.count(p.first)) out.push_back(p);
  }
  return out;
}

Tuple without(const Tuple& t, const std::set<std::string>& vars) {
  Tuple out;
  for (const auto& p : t) {
    if (!vars.count(p.first)) out.push_back(p);
  }
  return out;
}

BindingSet BindingSet::truth() {
  BindingSet b;
  b.tuples_.insert(Tuple{});
  return b;
}

BindingSet BindingSet::single(Tuple t) {
  BindingSet b;
  b.tuples_.insert(std::move(t));
  return b;
}

std::set<std::string> BindingSet::schema() const {
  std::set<std::string> out;
  for (const auto& t : tuples_) {
    for (const auto& p : t) out.insert(p.first);
  }
  return out;
}

bool BindingSet::binds_everywhere(std::string_view var) const {
  for (const auto& t : tuples_) {
    if (lookup(t, var) == nullptr) return false;
  }
  return true;
}

namespace {

// Variable list of a set whose tuples all share one schema.
std::optional<std::vector<std::string>> uniform_schema(const BindingSet& b) {
  std::optional<std::vector<std::string>> keys;
  for (const auto& t : b) {
    std::vector<std::string> k;
    k.reserve(t.size());
    for (const auto& p : t) k.push_back(p.first);
    if (!keys) {
      keys = std::move(k);
    } else if (*keys != k) {
      return std::nullopt;
    }
  }
  if (!keys) keys.emplace();
  return keys;
}

}  // namespace

BindingSet natural_join(const BindingSet& a, const BindingSet& b) {
  BindingSet out;
  if (a.empty() || b.empty()) return out;
  auto ka = uniform_schema(a);
  auto kb = uniform_schema(b);
  if (ka && kb) {
    std::set<std::string> common;
    std::set_intersection(ka->begin(), ka->end(), kb->begin(), kb->end(), std::inserter(common, common.end()));
    std::map<Tuple, std::vector<const Tuple*>> index;
    for (const auto& t : b) index[project(t, common)].push_back(&t);
    for (const auto& t : a) {
      auto it = index.find(project(t, common));
      if (it == index.end()) continue;
      for (const Tuple* u : it->second) {
        if (auto m = merge(t, *u)) out.insert(std::move(*m));
      }
    }
    return out;
  }
  for (const auto& t : a) {
    for (const auto& u : b) {
      if (auto m = merge(t, u)) out.insert(std::move(*m));
    }
  }
  return out;
}

BindingSet subsume_minus(const BindingSet& base, const BindingSet& removed) {
  BindingSet out;
  for (const auto& t : base) {
    bool hit = std::any_of(removed.begin(), removed.end(), [&](const Tuple& r) { return subsumed_by(t, r); });
    if (!hit) out.insert(t);
  }
  return out;
}

BindingSet project(const BindingSet& b, const std::set<std::string>& vars) {
  BindingSet out;
  for (const auto& t : b) out.insert(project(t, vars));
  return out;
}

BindingSet without(const BindingSet& b, const std::set<std::string>& vars) {
  BindingSet out;
  for (const auto& t : b) out.insert(without(t, vars));
  return out;
}

}  // namespace xpathlog
