#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>

#include "tr/curve.hpp"

namespace tr {

enum class Mode { Exact, Numeric };

// one curve's worth of parsed configuration, before scalar-type dispatch
struct CurveConfig {
  bool is_parametrization = false;

  ToricDiagram diagram;            // validated
  std::map<Pt, Rat> coefficients;  // resolved against the parameter table
  long framing = 1;
  std::optional<std::array<Pt, 2>> brane_edge;

  RatFun<Rat> X, Y;  // parametrization form
  bool additive = false;

  Mode mode = Mode::Exact;
  long precision = 256;
};

// accepts "p/q", plain integers, and decimal literals
Rat parse_rat(const std::string& s);

// rational expression in z with + - * / ^ and parentheses
RatFun<Rat> parse_ratfun(const std::string& s);

CurveConfig load_curve_config(const std::string& path);

template <class F>
SpectralCurve<F> build_curve(const CurveConfig& cc);

}  // namespace tr
