#pragma once

#include <string>

#include "conjugacy.hpp"
#include "diagnostics.hpp"
#include "engine.hpp"

namespace cmnf {

// Canonical line-oriented text form; serialize-parse round trips are byte identical.
std::string series_to_text(const BigradedSeries& s);
BigradedSeries series_from_text(const std::string& text);
std::string holo_to_text(const HoloSeries& s);
HoloSeries holo_from_text(const std::string& text);
std::string transform_to_text(const Transform& t);
Transform transform_from_text(const std::string& text);

// Manifold spec JSON (J entries and coefficients as canonical "p/q" strings).
ManifoldSpec spec_from_json(const std::string& json_text);
std::string spec_to_json(const ManifoldSpec& spec);

std::string validation_report_json(const SpecReport& rep);
std::string condition_report_json(const ConditionReport& rep);
std::string normal_form_report_json(const NormalFormReport& rep, const ManifoldSpec& spec);
std::string growth_report_json(const GrowthProfile& g);
std::string bigdenom_report_json(const BigdenomTable& t);
std::string bigdenom_table_text(const BigdenomTable& t);
std::string regularity_report_json(const RegularityReport& r);

}  // namespace cmnf
