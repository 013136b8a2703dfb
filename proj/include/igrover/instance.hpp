#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "igrover/errors.hpp"

namespace igrover {

using Index = std::uint64_t;

// Explicit, sorted, duplicate-free member list.
struct ListSet {
  std::vector<Index> members;
};

// Inclusive range [lo, hi].
struct RangeSet {
  Index lo = 0;
  Index hi = 0;
};

// All i with i mod m == r.
struct ModSet {
  Index m = 1;
  Index r = 0;
};

/// Membership description of a subset of {0, ..., n-1}. Evaluation is
/// O(log |members|) for lists and O(1) otherwise.
class MembershipSpec {
 public:
  using Variant = std::variant<ListSet, RangeSet, ModSet>;

  MembershipSpec() = default;
  MembershipSpec(ListSet s) : spec_(std::move(s)) {}
  MembershipSpec(RangeSet s) : spec_(s) {}
  MembershipSpec(ModSet s) : spec_(s) {}

  bool contains(Index i) const;

  /// Number of members in [0, upto]. upto is clamped to n-1 by callers.
  Index count_upto(Index upto) const;

  /// Number of members in [0, n).
  Index count(Index n) const;

  /// Calls fn(i) for each member below n, in increasing order; stops early
  /// when fn returns false.
  template <typename Fn>
  void for_each_member(Index n, Fn&& fn) const;

  const Variant& variant() const { return spec_; }

 private:
  Variant spec_ = RangeSet{0, 0};
};

/// A validated Two Sets Intersection instance with Y a subset of X.
class ProblemInstance {
 public:
  Index n() const { return n_; }
  const MembershipSpec& x_spec() const { return x_; }
  const MembershipSpec& y_spec() const { return y_; }

  bool f_x(Index i) const { return x_.contains(i); }
  bool f_y(Index i) const { return y_.contains(i); }

  Index x_size() const { return x_size_; }
  Index y_size() const { return y_size_; }

  friend ProblemInstance build_instance(Index n, MembershipSpec x, MembershipSpec y);

 private:
  Index n_ = 0;
  MembershipSpec x_;
  MembershipSpec y_;
  Index x_size_ = 0;
  Index y_size_ = 0;
};

/// Sizes of K11 = X∩Y (= Y), K10 = X\Y, K00 = complement of X.
struct ClassCounts {
  Index k11 = 0;
  Index k10 = 0;
  Index k00 = 0;
  Index n = 0;

  friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

enum class IndexClass { K00, K10, K11 };

// Throws Error with kind EmptyX, EmptyY, NotSubset, IndexOutOfRange or Parse.
ProblemInstance build_instance(Index n, MembershipSpec x, MembershipSpec y);

ClassCounts partition_classes(const ProblemInstance& inst);

// Counts without an instance, for synthetic grids. Requires 1 <= k11 <= |X| <= n.
ClassCounts make_counts(Index n, Index x_size, Index y_size);

IndexClass classify(const ProblemInstance& inst, Index i);

/// The classical post-measurement check: one f_X and one f_Y evaluation.
bool verify_outcome(const ProblemInstance& inst, Index i);

/// The j-th member (0-based, ascending) of class c. Binary search over
/// prefix counts, so it works for any n without enumerating.
Index select_in_class(const ProblemInstance& inst, IndexClass c, Index j);

// JSON instance file: {"n": int, "x": {"kind": ...}, "y": {...}}.
MembershipSpec membership_from_json(const nlohmann::json& j);
nlohmann::json membership_to_json(const MembershipSpec& spec);
ProblemInstance instance_from_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const ProblemInstance& inst);
ProblemInstance load_instance(const std::string& path);

template <typename Fn>
void MembershipSpec::for_each_member(Index n, Fn&& fn) const {
  if (const auto* l = std::get_if<ListSet>(&spec_)) {
    for (Index i : l->members) {
      if (i >= n || !fn(i)) return;
    }
  } else if (const auto* r = std::get_if<RangeSet>(&spec_)) {
    for (Index i = r->lo; i <= r->hi && i < n; ++i) {
      if (!fn(i)) return;
    }
  } else {
    const auto& md = std::get<ModSet>(spec_);
    for (Index i = md.r; i < n; i += md.m) {
      if (!fn(i)) return;
    }
  }
}

}  // namespace igrover
