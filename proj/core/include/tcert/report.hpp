#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "tcert/ball.hpp"
#include "tcert/real.hpp"

namespace tcert {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

enum class Status { Holds, Fails, Undetermined };

const char* to_string(Status s) noexcept;

/// holds when lhs.hi <= rhs.lo, fails when lhs.lo > rhs.hi.
Status compare_le(const Real& lhs, const Real& rhs);
/// holds when lhs.hi < rhs.lo, fails when lhs.lo >= rhs.hi.
Status compare_lt(const Real& lhs, const Real& rhs);

/// One evaluated inequality "lhs <= rhs" (or "<") with enclosures.
struct Inequality {
  std::string id;
  std::string statement;
  Real lhs;
  Real rhs;
  Status status = Status::Undetermined;
  std::string note;
};

struct BoundReport {
  std::vector<Inequality> items;

  Inequality& add_le(std::string id, std::string statement, const Real& lhs, const Real& rhs,
                     std::string note = {});
  Inequality& add_lt(std::string id, std::string statement, const Real& lhs, const Real& rhs,
                     std::string note = {});
  const Inequality* find(const std::string& id) const;
  bool all_hold() const;
  bool any_fail() const;
  bool any_undetermined() const;
};

json to_json(const Real& r, int digits = 20);
json to_json(const Ball& b, int digits = 20);
json to_json(const Inequality& q);
json to_json(const BoundReport& r);

}  // namespace tcert
