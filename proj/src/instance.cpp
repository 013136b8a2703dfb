#include "igrover/instance.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace igrover {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::EmptyX: return "EmptyX";
    case ErrorKind::EmptyY: return "EmptyY";
    case ErrorKind::NotSubset: return "NotSubset";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InsufficientTrace: return "InsufficientTrace";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorKind::NotClassUniform: return "NotClassUniform";
    case ErrorKind::ExhaustedRepetitions: return "ExhaustedRepetitions";
  }
  return "Unknown";
}

bool MembershipSpec::contains(Index i) const {
  return std::visit(
      [i](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ListSet>) {
          return std::binary_search(s.members.begin(), s.members.end(), i);
        } else if constexpr (std::is_same_v<T, RangeSet>) {
          return s.lo <= i && i <= s.hi;
        } else {
          return i % s.m == s.r;
        }
      },
      spec_);
}

Index MembershipSpec::count_upto(Index upto) const {
  return std::visit(
      [upto](const auto& s) -> Index {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ListSet>) {
          return static_cast<Index>(
              std::upper_bound(s.members.begin(), s.members.end(), upto) - s.members.begin());
        } else if constexpr (std::is_same_v<T, RangeSet>) {
          if (upto < s.lo || s.hi < s.lo) return 0;
          return std::min(upto, s.hi) - s.lo + 1;
        } else {
          if (upto < s.r) return 0;
          return (upto - s.r) / s.m + 1;
        }
      },
      spec_);
}

Index MembershipSpec::count(Index n) const { return n == 0 ? 0 : count_upto(n - 1); }

namespace {

void validate_spec(const MembershipSpec& spec, Index n, const char* name) {
  const auto& v = spec.variant();
  if (const auto* l = std::get_if<ListSet>(&v)) {
    for (std::size_t k = 0; k < l->members.size(); ++k) {
      if (l->members[k] >= n) {
        throw Error(ErrorKind::IndexOutOfRange, std::string(name) + " member " +
                                                    std::to_string(l->members[k]) +
                                                    " is outside [0, " + std::to_string(n - 1) + "]");
      }
      if (k > 0 && l->members[k] <= l->members[k - 1]) {
        throw Error(ErrorKind::Parse,
                    std::string(name) + " list must be sorted and duplicate-free");
      }
    }
  } else if (const auto* r = std::get_if<RangeSet>(&v)) {
    if (r->lo > r->hi) {
      throw Error(ErrorKind::Parse, std::string(name) + " range has lo > hi");
    }
    if (r->hi >= n) {
      throw Error(ErrorKind::IndexOutOfRange, std::string(name) + " range bound " +
                                                  std::to_string(r->hi) + " is outside [0, " +
                                                  std::to_string(n - 1) + "]");
    }
  } else {
    const auto& md = std::get<ModSet>(v);
    if (md.m == 0 || md.r >= md.m) {
      throw Error(ErrorKind::Parse, std::string(name) + " mod rule needs m > 0 and 0 <= r < m");
    }
  }
}

}  // namespace

ProblemInstance build_instance(Index n, MembershipSpec x, MembershipSpec y) {
  if (n < 2) throw Error(ErrorKind::Parse, "n must be at least 2");
  validate_spec(x, n, "x");
  validate_spec(y, n, "y");

  ProblemInstance inst;
  inst.n_ = n;
  inst.x_size_ = x.count(n);
  inst.y_size_ = y.count(n);
  if (inst.x_size_ == 0) throw Error(ErrorKind::EmptyX, "X is empty");
  if (inst.y_size_ == 0) throw Error(ErrorKind::EmptyY, "Y is empty");

  // Y ⊆ X, checked member by member so the diagnostic can name the index.
  std::optional<Index> offender;
  y.for_each_member(n, [&](Index i) {
    if (!x.contains(i)) {
      offender = i;
      return false;
    }
    return true;
  });
  if (offender) {
    throw Error(ErrorKind::NotSubset,
                "index " + std::to_string(*offender) + " is in Y but not in X");
  }
  inst.x_ = std::move(x);
  inst.y_ = std::move(y);
  return inst;
}

ClassCounts partition_classes(const ProblemInstance& inst) {
  return make_counts(inst.n(), inst.x_size(), inst.y_size());
}

ClassCounts make_counts(Index n, Index x_size, Index y_size) {
  if (y_size < 1 || y_size > x_size || x_size > n) {
    throw Error(ErrorKind::Parse, "class sizes need 1 <= |Y| <= |X| <= n");
  }
  return ClassCounts{y_size, x_size - y_size, n - x_size, n};
}

IndexClass classify(const ProblemInstance& inst, Index i) {
  if (inst.f_y(i)) return IndexClass::K11;
  return inst.f_x(i) ? IndexClass::K10 : IndexClass::K00;
}

bool verify_outcome(const ProblemInstance& inst, Index i) {
  if (i >= inst.n()) {
    throw Error(ErrorKind::IndexOutOfRange,
                "index " + std::to_string(i) + " is outside [0, " + std::to_string(inst.n() - 1) + "]");
  }
  const bool in_x = inst.f_x(i);
  const bool in_y = inst.f_y(i);
  return in_x && in_y;
}

Index select_in_class(const ProblemInstance& inst, IndexClass c, Index j) {
  auto prefix = [&](Index v) -> Index {
    const Index in_x = inst.x_spec().count_upto(v);
    const Index in_y = inst.y_spec().count_upto(v);
    switch (c) {
      case IndexClass::K11: return in_y;
      case IndexClass::K10: return in_x - in_y;
      case IndexClass::K00: return v + 1 - in_x;
    }
    return 0;
  };
  if (prefix(inst.n() - 1) <= j) {
    throw Error(ErrorKind::IndexOutOfRange, "class rank " + std::to_string(j) + " out of range");
  }
  // Smallest v with prefix(v) > j.
  Index lo = 0;
  Index hi = inst.n() - 1;
  while (lo < hi) {
    const Index mid = lo + (hi - lo) / 2;
    if (prefix(mid) > j) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

namespace {

Index get_index(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorKind::Parse, std::string("missing field \"") + key + "\"");
  const auto& v = j.at(key);
  if (!v.is_number_integer()) {
    throw Error(ErrorKind::Parse, std::string("field \"") + key + "\" must be an integer");
  }
  if (v.is_number_unsigned()) return v.get<Index>();
  const auto s = v.get<std::int64_t>();
  if (s < 0) throw Error(ErrorKind::IndexOutOfRange, std::string("field \"") + key + "\" is negative");
  return static_cast<Index>(s);
}

}  // namespace

MembershipSpec membership_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw Error(ErrorKind::Parse, "membership spec needs a string \"kind\"");
  }
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "list") {
    if (!j.contains("members") || !j.at("members").is_array()) {
      throw Error(ErrorKind::Parse, "list kind needs a \"members\" array");
    }
    ListSet s;
    for (const auto& m : j.at("members")) {
      if (!m.is_number_integer()) throw Error(ErrorKind::Parse, "list members must be integers");
      if (m.is_number_integer() && !m.is_number_unsigned() && m.get<std::int64_t>() < 0) {
        throw Error(ErrorKind::IndexOutOfRange,
                    "list member " + std::to_string(m.get<std::int64_t>()) + " is negative");
      }
      s.members.push_back(m.get<Index>());
    }
    return s;
  }
  if (kind == "range") return RangeSet{get_index(j, "lo"), get_index(j, "hi")};
  if (kind == "mod") return ModSet{get_index(j, "m"), get_index(j, "r")};
  throw Error(ErrorKind::Parse, "unknown membership kind \"" + kind + "\"");
}

nlohmann::json membership_to_json(const MembershipSpec& spec) {
  return std::visit(
      [](const auto& s) -> nlohmann::json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ListSet>) {
          return {{"kind", "list"}, {"members", s.members}};
        } else if constexpr (std::is_same_v<T, RangeSet>) {
          return {{"kind", "range"}, {"lo", s.lo}, {"hi", s.hi}};
        } else {
          return {{"kind", "mod"}, {"m", s.m}, {"r", s.r}};
        }
      },
      spec.variant());
}

ProblemInstance instance_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::Parse, "instance must be a JSON object");
  if (!j.contains("x") || !j.contains("y")) {
    throw Error(ErrorKind::Parse, "instance needs \"x\" and \"y\" membership specs");
  }
  return build_instance(get_index(j, "n"), membership_from_json(j.at("x")),
                        membership_from_json(j.at("y")));
}

nlohmann::json instance_to_json(const ProblemInstance& inst) {
  return {{"n", inst.n()},
          {"x", membership_to_json(inst.x_spec())},
          {"y", membership_to_json(inst.y_spec())}};
}

ProblemInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open instance file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
  return instance_from_json(j);
}

}  // namespace igrover
