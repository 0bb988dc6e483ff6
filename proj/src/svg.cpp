#include "qsmooth/svg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <vector>

#include "qsmooth/csv.hpp"

namespace qsmooth {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 560.0;
constexpr double kMargin = 50.0;

struct Scale {
  double lo, hi;
  double px_lo, px_hi;

  double operator()(double v) const {
    const double t = (v - lo) / (hi - lo);
    return px_lo + t * (px_hi - px_lo);
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

std::string render_fit_svg(const Eigen::Ref<const Eigen::VectorXd>& xs,
                           const Eigen::Ref<const Eigen::VectorXd>& ys,
                           const Eigen::Ref<const Eigen::VectorXd>& fitted,
                           const std::string& title) {
  double x_lo = xs.minCoeff(), x_hi = xs.maxCoeff();
  double y_lo = std::min(ys.minCoeff(), fitted.minCoeff());
  double y_hi = std::max(ys.maxCoeff(), fitted.maxCoeff());
  if (x_lo == x_hi) {
    x_lo -= 0.5;
    x_hi += 0.5;
  }
  if (y_lo == y_hi) {
    y_lo -= 0.5;
    y_hi += 0.5;
  }
  const Scale sx{x_lo, x_hi, kMargin, kWidth - kMargin};
  const Scale sy{y_lo, y_hi, kHeight - kMargin, kMargin};  // y grows upward

  std::vector<Eigen::Index> order(static_cast<std::size_t>(xs.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return xs[a] < xs[b]; });

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n"
      << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // axes
  svg << "  <line x1=\"" << kMargin << "\" y1=\"" << (kHeight - kMargin)
      << "\" x2=\"" << (kWidth - kMargin) << "\" y2=\"" << (kHeight - kMargin)
      << "\" stroke=\"black\"/>\n"
      << "  <line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\""
      << kMargin << "\" y2=\"" << (kHeight - kMargin)
      << "\" stroke=\"black\"/>\n";
  svg << "  <text x=\"" << kMargin << "\" y=\"" << (kHeight - kMargin + 30)
      << "\" font-size=\"12\">" << fmt(x_lo) << "</text>\n"
      << "  <text x=\"" << (kWidth - kMargin - 40) << "\" y=\""
      << (kHeight - kMargin + 30) << "\" font-size=\"12\">" << fmt(x_hi)
      << "</text>\n"
      << "  <text x=\"6\" y=\"" << (kHeight - kMargin)
      << "\" font-size=\"12\">" << fmt(y_lo) << "</text>\n"
      << "  <text x=\"6\" y=\"" << (kMargin + 4) << "\" font-size=\"12\">"
      << fmt(y_hi) << "</text>\n";
  if (!title.empty()) {
    svg << "  <text x=\"" << kWidth / 2 << "\" y=\"24\" font-size=\"14\" "
        << "text-anchor=\"middle\">" << title << "</text>\n";
  }

  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    svg << "  <circle cx=\"" << fmt(sx(xs[i])) << "\" cy=\"" << fmt(sy(ys[i]))
        << "\" r=\"2.5\" fill=\"steelblue\" fill-opacity=\"0.7\"/>\n";
  }

  svg << "  <polyline fill=\"none\" stroke=\"firebrick\" stroke-width=\"2\" "
         "points=\"";
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Eigen::Index i = order[k];
    if (k > 0) svg << ' ';
    svg << fmt(sx(xs[i])) << ',' << fmt(sy(fitted[i]));
  }
  svg << "\"/>\n</svg>\n";
  return svg.str();
}

}  // namespace qsmooth
