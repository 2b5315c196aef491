#include "tcert/report.hpp"

namespace tcert {

const char* to_string(Status s) noexcept {
  switch (s) {
    case Status::Holds: return "holds";
    case Status::Fails: return "fails";
    case Status::Undetermined: return "undetermined";
  }
  return "undetermined";
}

Status compare_le(const Real& lhs, const Real& rhs) {
  if (lhs.certainly_le(rhs)) return Status::Holds;
  if (rhs.certainly_lt(lhs)) return Status::Fails;
  return Status::Undetermined;
}

Status compare_lt(const Real& lhs, const Real& rhs) {
  if (lhs.certainly_lt(rhs)) return Status::Holds;
  if (rhs.certainly_le(lhs)) return Status::Fails;
  return Status::Undetermined;
}

Inequality& BoundReport::add_le(std::string id, std::string statement, const Real& lhs,
                                const Real& rhs, std::string note) {
  items.push_back({std::move(id), std::move(statement), lhs, rhs, compare_le(lhs, rhs), std::move(note)});
  return items.back();
}

Inequality& BoundReport::add_lt(std::string id, std::string statement, const Real& lhs,
                                const Real& rhs, std::string note) {
  items.push_back({std::move(id), std::move(statement), lhs, rhs, compare_lt(lhs, rhs), std::move(note)});
  return items.back();
}

const Inequality* BoundReport::find(const std::string& id) const {
  for (const auto& q : items) {
    if (q.id == id) return &q;
  }
  return nullptr;
}

bool BoundReport::all_hold() const {
  for (const auto& q : items) {
    if (q.status != Status::Holds) return false;
  }
  return true;
}

bool BoundReport::any_fail() const {
  for (const auto& q : items) {
    if (q.status == Status::Fails) return true;
  }
  return false;
}

bool BoundReport::any_undetermined() const {
  for (const auto& q : items) {
    if (q.status == Status::Undetermined) return true;
  }
  return false;
}

json to_json(const Real& r, int digits) {
  return json{{"lo", r.lo_string(digits)}, {"hi", r.hi_string(digits)}};
}

json to_json(const Ball& b, int digits) {
  return json{{"mid", {{"re", to_decimal(b.mid_re(), MPFR_RNDN, digits)},
                       {"im", to_decimal(b.mid_im(), MPFR_RNDN, digits)}}},
              {"rad", to_decimal(b.rad(), MPFR_RNDU, 6)}};
}

json to_json(const Inequality& q) {
  json j{{"id", q.id}, {"statement", q.statement}, {"lhs", to_json(q.lhs)},
         {"rhs", to_json(q.rhs)}, {"status", to_string(q.status)}};
  if (!q.note.empty()) j["note"] = q.note;
  return j;
}

json to_json(const BoundReport& r) {
  json arr = json::array();
  for (const auto& q : r.items) arr.push_back(to_json(q));
  return arr;
}

}  // namespace tcert
