#pragma once

// Static SVG charts, 800x500, no script. Byte-deterministic for equal input.

#include <string>
#include <vector>

#include "thresh/model.hpp"
#include "thresh/pr.hpp"
#include "thresh/sweep.hpp"

namespace thresh {

/// Four series (action overall/mean in blue, reason overall/mean in red), one
/// vertex per grid threshold.
std::string render_landscape_svg(const MetricLandscape& ls);

/// One precision-recall polyline per curve, a marker circle per grid
/// threshold. Class names come from `schema` when given.
std::string render_pr_svg(const std::vector<PRCurve>& curves, const EvalSchema* schema = nullptr);

std::string xml_escape(std::string_view text);

}  // namespace thresh
