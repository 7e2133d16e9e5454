#pragma once

// JSON encodings of the report records. Every record decodes back to an equal
// value; doubles are written with round-trip precision by nlohmann/json.

#include <json.hpp>

#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "subadd/certificate.hpp"
#include "subadd/search.hpp"
#include "subadd/suite.hpp"

namespace subadd {

inline Tri parse_tri(const std::string& s) {
  if (s == "TRUE") return Tri::True;
  if (s == "FALSE") return Tri::False;
  if (s == "UNKNOWN") return Tri::Unknown;
  throw input_error("unknown tri-state '" + s + "'");
}

inline CertVerdict parse_cert_verdict(const std::string& s) {
  if (s == "CERTIFIED") return CertVerdict::Certified;
  if (s == "NOT_CERTIFIED") return CertVerdict::NotCertified;
  if (s == "UNKNOWN") return CertVerdict::Unknown;
  throw input_error("unknown certificate verdict '" + s + "'");
}

namespace detail {

// NaN marks "not computed" (e.g. a table row without a scan); JSON has no NaN.
inline nlohmann::json nullable(double v) { return std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v); }
inline double from_nullable(const nlohmann::json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace detail

}  // namespace subadd

namespace nlohmann {

template <>
struct adl_serializer<subadd::Params> {
  static void to_json(json& j, const subadd::Params& p) {
    j = {{"mu", p.mu()}, {"sigma", p.sigma()}, {"alpha", p.alpha()}};
  }
  static subadd::Params from_json(const json& j) {
    return {j.at("mu").get<double>(), j.at("sigma").get<double>(), j.at("alpha").get<double>()};
  }
};

template <>
struct adl_serializer<subadd::Order> {
  static void to_json(json& j, const subadd::Order& a) { j = a.value(); }
  static subadd::Order from_json(const json& j) { return subadd::Order(j.get<double>()); }
};

template <>
struct adl_serializer<subadd::Point> {
  static void to_json(json& j, const subadd::Point& p) { j = {{"x", p.x}, {"y", p.y}}; }
  static subadd::Point from_json(const json& j) { return {j.at("x").get<double>(), j.at("y").get<double>()}; }
};

template <>
struct adl_serializer<subadd::Interval> {
  static void to_json(json& j, const subadd::Interval& v) { j = {{"lo", v.lo()}, {"hi", v.hi()}}; }
  static subadd::Interval from_json(const json& j) { return {j.at("lo").get<double>(), j.at("hi").get<double>()}; }
};

template <>
struct adl_serializer<subadd::ConditionResult> {
  static void to_json(json& j, const subadd::ConditionResult& c) {
    j = {{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"verdict", subadd::to_string(c.verdict)}};
  }
  static subadd::ConditionResult from_json(const json& j) {
    return {j.at("name").get<std::string>(), j.at("lhs").get<subadd::Interval>(), j.at("rhs").get<subadd::Interval>(),
            subadd::parse_tri(j.at("verdict").get<std::string>())};
  }
};

template <>
struct adl_serializer<subadd::CertificateReport> {
  static void to_json(json& j, const subadd::CertificateReport& r) {
    j = {{"params", r.params},
         {"conditions", r.conditions},
         {"verdict", subadd::to_string(r.verdict)},
         {"note", subadd::verdict_note(r.verdict)}};
  }
  static subadd::CertificateReport from_json(const json& j) {
    return {j.at("params").get<subadd::Params>(), j.at("conditions").get<std::vector<subadd::ConditionResult>>(),
            subadd::parse_cert_verdict(j.at("verdict").get<std::string>())};
  }
};

template <>
struct adl_serializer<subadd::Box> {
  static void to_json(json& j, const subadd::Box& b) {
    j = {{"x_lo", b.x_lo}, {"x_hi", b.x_hi}, {"y_lo", b.y_lo}, {"y_hi", b.y_hi}};
  }
  static subadd::Box from_json(const json& j) {
    return {j.at("x_lo").get<double>(), j.at("x_hi").get<double>(), j.at("y_lo").get<double>(),
            j.at("y_hi").get<double>()};
  }
};

template <>
struct adl_serializer<subadd::ScanReport> {
  static void to_json(json& j, const subadd::ScanReport& r) {
    j = {{"order", r.order}, {"params", r.params},   {"min_gap", r.min_gap},
         {"argmin", r.argmin}, {"evaluations", r.evaluations}};
  }
  static subadd::ScanReport from_json(const json& j) {
    return {j.at("order").get<subadd::Order>(), j.at("params").get<subadd::Params>(), j.at("min_gap").get<double>(),
            j.at("argmin").get<subadd::Point>(), j.at("evaluations").get<std::uint64_t>()};
  }
};

template <>
struct adl_serializer<subadd::Violation> {
  static void to_json(json& j, const subadd::Violation& v) {
    j = {{"order", v.order}, {"params", v.params}, {"point", v.point}, {"margin", v.margin}};
  }
  static subadd::Violation from_json(const json& j) {
    return {j.at("order").get<subadd::Order>(), j.at("params").get<subadd::Params>(),
            j.at("point").get<subadd::Point>(), j.at("margin").get<double>()};
  }
};

template <>
struct adl_serializer<subadd::TableRow> {
  static void to_json(json& j, const subadd::TableRow& r) {
    j = {{"mu", r.entry.mu},
         {"sigma", r.entry.sigma},
         {"alpha", r.entry.alpha},
         {"x_star", r.entry.x_star},
         {"y_star", r.entry.y_star},
         {"margin", r.margin},
         {"printed_margin", r.entry.printed_margin},
         {"s2_scan_min", subadd::detail::nullable(r.s2_scan_min)}};
  }
  static subadd::TableRow from_json(const json& j) {
    subadd::TableEntry e{j.at("mu").get<double>(),     j.at("sigma").get<double>(),
                         j.at("alpha").get<double>(),  j.at("x_star").get<double>(),
                         j.at("y_star").get<double>(), j.at("printed_margin").get<double>()};
    return {e, j.at("margin").get<double>(), subadd::detail::from_nullable(j.at("s2_scan_min"))};
  }
};

template <>
struct adl_serializer<subadd::CheckResult> {
  static void to_json(json& j, const subadd::CheckResult& c) {
    j = {{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}};
  }
  static subadd::CheckResult from_json(const json& j) {
    return {j.at("name").get<std::string>(), j.at("passed").get<bool>(), j.at("detail").get<std::string>()};
  }
};

}  // namespace nlohmann
