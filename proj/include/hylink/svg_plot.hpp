#pragma once

#include "hylink/sweep_optimizer.hpp"

#include <string>

namespace hylink
{
// Static line plot of a figure's table: log-x for fig3/fig4, linear x for
// fig5..fig7. Curve families are split on the series column. Flagged (NaN)
// points break the polyline. Output depends only on the table contents.
std::string render_svg(const SweepResult& result, FigureId figure);

} // namespace hylink
