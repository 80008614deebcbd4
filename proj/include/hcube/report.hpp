#pragma once

// JSON renderings of the library's reports. Keys keep insertion order so the
// output of identical runs is byte-identical.

#include <cmath>
#include <optional>

#include <json.hpp>

#include "hcube/core.hpp"
#include "hcube/counting.hpp"
#include "hcube/lemma_lab.hpp"
#include "hcube/verifier.hpp"

namespace hcube {

using Json = nlohmann::ordered_json;

namespace detail {
// Non-finite doubles become null.
inline Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }
inline Json number(const std::optional<double>& v) { return v ? number(*v) : Json(nullptr); }
}  // namespace detail

inline Json to_json(const HoelderParams& p) {
  return Json{{"n", p.n}, {"p", p.p}, {"r", p.r}, {"c", p.c}};
}

/// `count` is a decimal string so arbitrarily large exact counts survive JSON.
inline Json to_json(const CountReport& rep, const char* method) {
  return Json{{"n", rep.n},
              {"method", method},
              {"family_size", rep.family_size},
              {"count", rep.count.str()},
              {"log_count", detail::number(rep.log_count)},
              {"exponent_c", rep.exponent},
              {"bound_log", detail::number(rep.bound_log)},
              {"ratio", detail::number(rep.ratio)},
              {"tolerance", kBoundSlack},
              {"holds", rep.holds}};
}

inline Json to_json(const TrialConfig& c) {
  return Json{{"n", c.n},
              {"m", c.m},
              {"trials", c.trials},
              {"seed", c.seed},
              {"distribution", to_string(c.distribution)},
              {"density", c.density},
              {"signed", c.signed_values},
              {"rel_tolerance", kRelTol},
              {"abs_tolerance", kAbsTol}};
}

inline Json to_json(const VerifyReport& rep) {
  return Json{{"config", to_json(rep.config)},
              {"trials", rep.trials},
              {"max_ratio", detail::number(rep.max_ratio)},
              {"worst_trial", rep.worst_trial},
              {"failures", rep.failures}};
}

inline Json to_json(const CriticalPointReport& rep) {
  return Json{{"n", rep.n},
              {"k", rep.k},
              {"r", rep.r},
              {"status", to_string(rep.status)},
              {"detail", rep.detail},
              {"z_lower", detail::number(rep.z_lower)},
              {"z_upper", detail::number(rep.z_upper)},
              {"z", detail::number(rep.z)},
              {"u", detail::number(rep.u)},
              {"v", detail::number(rep.v)},
              {"v_closed", detail::number(rep.v_closed)},
              {"v_numerator", detail::number(rep.v_numerator)},
              {"residual_eq1", detail::number(rep.residual_eq1)},
              {"identity_gap", detail::number(rep.identity_gap)},
              {"log_gap", detail::number(rep.log_gap)},
              {"f_value", detail::number(rep.f_value)},
              {"last_value", detail::number(rep.last_value)},
              {"additional_roots", rep.additional_roots},
              {"degenerate", rep.degenerate},
              {"bisection_tolerance", kBisectionTol}};
}

inline Json to_json(const LastValueScan& scan) {
  return Json{{"n", scan.n},
              {"grid", scan.grid},
              {"z_lo", scan.z_lo},
              {"z_hi", scan.z_hi},
              {"min_last_value", detail::number(scan.min_value)},
              {"argmin_k", scan.argmin_k},
              {"argmin_z", scan.argmin_z}};
}

}  // namespace hcube
