#pragma once

#include <string>

#include <Eigen/Core>

namespace qsmooth {

/// Self-contained SVG: scatter of the observations plus the fitted polyline
/// (drawn in ascending-x order). No external references.
std::string render_fit_svg(const Eigen::Ref<const Eigen::VectorXd>& xs,
                           const Eigen::Ref<const Eigen::VectorXd>& ys,
                           const Eigen::Ref<const Eigen::VectorXd>& fitted,
                           const std::string& title = "");

}  // namespace qsmooth
