#include "stepper/provenance.hpp"

#include <algorithm>
#include <sstream>

namespace stepper::eval {

namespace {

IdList lookup(const std::unordered_map<NodeId, IdList>& map, NodeId id) {
  if (auto it = map.find(id); it != map.end()) return it->second;
  return {id};
}

bool contains(const IdList& list, NodeId id) {
  return std::find(list.begin(), list.end(), id) != list.end();
}

void erase_value(IdList& list, NodeId id) { std::erase(list, id); }

bool is_self_singleton(const IdList& list, NodeId id) { return list.size() == 1 && list[0] == id; }

}  // namespace

IdList ProvenanceStore::origin(NodeId id) const { return lookup(origin_, id); }
IdList ProvenanceStore::progeny(NodeId id) const { return lookup(progeny_, id); }

void ProvenanceStore::remove_from_origin(NodeId child, NodeId parent) {
  auto list = origin(child);
  erase_value(list, parent);
  origin_[child] = std::move(list);
}

void ProvenanceStore::remove_from_progeny(NodeId parent, NodeId child) {
  auto list = progeny(parent);
  erase_value(list, child);
  progeny_[parent] = std::move(list);
}

void ProvenanceStore::mark_origin(NodeId newborn, NodeId parent) {
  for (NodeId old : origin(newborn)) {
    if (old != newborn && old != parent) remove_from_progeny(old, newborn);
  }
  for (NodeId old : progeny(parent)) {
    if (old != parent && old != newborn) remove_from_origin(old, parent);
  }
  origin_[newborn] = {parent};
  progeny_[parent] = {newborn};
}

void ProvenanceStore::add_origin(NodeId newborn, NodeId parent) {
  if (is_self_singleton(origin(newborn), newborn)) origin_[newborn] = {};
  if (is_self_singleton(progeny(parent), parent)) progeny_[parent] = {};
  auto& up = origin_[newborn];
  if (!contains(up, parent)) up.insert(up.begin(), parent);
  auto& down = progeny_[parent];
  if (!contains(down, newborn)) down.insert(down.begin(), newborn);
}

bool ProvenanceStore::progeny_is_self(const ProvenanceStore& s, NodeId id) {
  return is_self_singleton(s.progeny(id), id);
}

bool ProvenanceStore::origin_is_self(const ProvenanceStore& s, NodeId id) {
  return is_self_singleton(s.origin(id), id);
}

void ProvenanceStore::dissolve(const Expr& item, const Guard& when) {
  if (when(*this, item->id())) {
    for (NodeId child : progeny(item->id())) remove_from_origin(child, item->id());
    progeny_[item->id()] = {};
  }
  if (item->is_list()) {
    for (const auto& c : item->list().children) dissolve(c, when);
    if (item->list().tail) dissolve(item->list().tail, when);
  }
}

void ProvenanceStore::eradicate(const Expr& item, const Guard& when) {
  if (when(*this, item->id())) {
    for (NodeId parent : origin(item->id())) remove_from_progeny(parent, item->id());
    origin_[item->id()] = {};
  }
  if (item->is_list()) {
    for (const auto& c : item->list().children) eradicate(c, when);
    if (item->list().tail) eradicate(item->list().tail, when);
  }
}

void ProvenanceStore::set_progeny(NodeId parent, const IdList& children) {
  for (NodeId old : progeny(parent)) {
    if (old != parent) remove_from_origin(old, parent);
  }
  progeny_[parent] = children;
}

void ProvenanceStore::repoint_origin(NodeId child, NodeId from, NodeId to) {
  auto list = origin(child);
  auto it = std::find(list.begin(), list.end(), from);
  if (it != list.end()) {
    *it = to;
  } else {
    list.insert(list.begin(), to);
  }
  IdList unique;
  for (NodeId id : list) {
    if (!contains(unique, id)) unique.push_back(id);
  }
  origin_[child] = std::move(unique);
}

ProvenanceStore ProvenanceStore::reversed() const {
  ProvenanceStore r;
  r.origin_ = progeny_;
  r.progeny_ = origin_;
  return r;
}

std::string ProvenanceStore::check_invariants() const {
  std::ostringstream out;
  auto no_duplicates = [&](const auto& map, const char* name) {
    for (const auto& [key, list] : map) {
      for (std::size_t i = 0; i < list.size(); ++i) {
        for (std::size_t j = i + 1; j < list.size(); ++j) {
          if (list[i] == list[j]) {
            out << name << "(" << key.value << ") holds " << list[i].value << " twice";
            return false;
          }
        }
      }
    }
    return true;
  };
  if (!no_duplicates(origin_, "origin") || !no_duplicates(progeny_, "progeny")) return out.str();
  for (const auto& [parent, children] : progeny_) {
    for (NodeId child : children) {
      if (child != parent && !contains(origin(child), parent)) {
        out << child.value << " in progeny(" << parent.value << ") but not the reverse";
        return out.str();
      }
    }
  }
  for (const auto& [child, parents] : origin_) {
    for (NodeId parent : parents) {
      if (parent != child && !contains(progeny(parent), child)) {
        out << parent.value << " in origin(" << child.value << ") but not the reverse";
        return out.str();
      }
    }
  }
  return {};
}

}  // namespace stepper::eval
