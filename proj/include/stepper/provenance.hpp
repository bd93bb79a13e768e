#pragma once

#include "stepper/syntax.hpp"

#include <functional>
#include <unordered_map>
#include <vector>

namespace stepper::eval {

using syntax::Expr;
using syntax::NodeId;
using IdList = std::vector<NodeId>;

/// The origin/progeny pair linking the nodes of one expression to the nodes
/// of its successor.  An absent key reads as the singleton list holding the
/// key itself: every node is, by default, its own origin and progeny.
///
/// All mutators keep the two maps mirror images of each other (ignoring the
/// implicit self-links): x is in progeny(y) exactly when y is in origin(x).
class ProvenanceStore {
 public:
  IdList origin(NodeId id) const;
  IdList progeny(NodeId id) const;

  bool has_explicit_origin(NodeId id) const { return origin_.contains(id); }
  bool has_explicit_progeny(NodeId id) const { return progeny_.contains(id); }

  /// origin(newborn) := [parent], progeny(parent) := [newborn]; links these
  /// lists held before are pruned from the other side.
  void mark_origin(NodeId newborn, NodeId parent);

  /// Adds parent to origin(newborn) (and newborn to progeny(parent)),
  /// dropping the implicit self-entries first.  Idempotent.
  void add_origin(NodeId newborn, NodeId parent);

  using Guard = std::function<bool(const ProvenanceStore&, NodeId)>;

  /// Guard of dissolve: progeny(id) is still [id].
  static bool progeny_is_self(const ProvenanceStore& s, NodeId id);
  /// Guard of eradicate: origin(id) is still [id].
  static bool origin_is_self(const ProvenanceStore& s, NodeId id);
  static bool always(const ProvenanceStore&, NodeId) { return true; }

  /// Marks `item` and, recursively, its sub-expressions as disappearing.
  void dissolve(const Expr& item, const Guard& when = progeny_is_self);
  /// Marks `item` and its sub-expressions as emerging from nothing.
  void eradicate(const Expr& item, const Guard& when = origin_is_self);

  /// Replaces progeny(parent) wholesale, keeping the mirror consistent.
  void set_progeny(NodeId parent, const IdList& children);

  /// Replaces `from` with `to` in origin(child); prepends `to` if `from` is
  /// absent.
  void repoint_origin(NodeId child, NodeId from, NodeId to);

  /// Same maps with roles exchanged (used to play a step backwards).
  ProvenanceStore reversed() const;

  const std::unordered_map<NodeId, IdList>& explicit_origins() const { return origin_; }
  const std::unordered_map<NodeId, IdList>& explicit_progeny() const { return progeny_; }

  /// Mirror symmetry and duplicate freedom; returns a description of the
  /// first violation or an empty string.
  std::string check_invariants() const;

 private:
  void remove_from_origin(NodeId child, NodeId parent);
  void remove_from_progeny(NodeId parent, NodeId child);

  std::unordered_map<NodeId, IdList> origin_;
  std::unordered_map<NodeId, IdList> progeny_;
};

}  // namespace stepper::eval
