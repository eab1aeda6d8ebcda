#include "serialize.hpp"

#include <algorithm>
#include <vector>

#include <fmt/format.h>

#include "error.hpp"

namespace gclone {

using nlohmann::json;

json to_json(const DiagonalState& state) {
  return json{{"probs", std::vector<double>(state.probs().begin(), state.probs().end())},
              {"tail_mass", state.tail_mass()}};
}

DiagonalState diagonal_state_from_json(const json& j) {
  try {
    auto probs = j.at("probs").get<std::vector<double>>();
    if (j.contains("tail_mass")) return DiagonalState(std::move(probs), j.at("tail_mass").get<double>());
    return DiagonalState(std::move(probs));
  } catch (const json::exception& e) {
    throw ParameterError(fmt::format("malformed diagonal state JSON: {}", e.what()));
  }
}

json to_json(const GaussianState& state) {
  json cov = json::array();
  for (Eigen::Index i = 0; i < state.cov().rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < state.cov().cols(); ++k) row.push_back(state.cov()(i, k));
    cov.push_back(std::move(row));
  }
  return json{{"mean", std::vector<double>(state.mean().data(), state.mean().data() + state.mean().size())},
              {"cov", std::move(cov)}};
}

GaussianState gaussian_state_from_json(const json& j) {
  try {
    const auto mean = j.at("mean").get<std::vector<double>>();
    const auto rows = j.at("cov").get<std::vector<std::vector<double>>>();
    const auto n = static_cast<Eigen::Index>(mean.size());
    if (static_cast<Eigen::Index>(rows.size()) != n) throw ParameterError("cov row count does not match mean length");
    Eigen::MatrixXd cov(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& row = rows[static_cast<std::size_t>(i)];
      if (static_cast<Eigen::Index>(row.size()) != n) throw ParameterError("cov is not square");
      for (Eigen::Index k = 0; k < n; ++k) cov(i, k) = row[static_cast<std::size_t>(k)];
    }
    return GaussianState(Eigen::Map<const Eigen::VectorXd>(mean.data(), n), std::move(cov));
  } catch (const json::exception& e) {
    throw ParameterError(fmt::format("malformed Gaussian state JSON: {}", e.what()));
  }
}

json to_json(const IdlerOptimum& opt) {
  return json{{"tau_star", to_json(opt.tau_star)},
              {"delta_star", opt.delta_star},
              {"solver_status", to_string(opt.status)},
              {"gap", opt.gap},
              {"dual_infeasibility", opt.dual_infeasibility},
              {"iterations", opt.iterations},
              {"message", opt.message}};
}

json to_json(const MeritReport& row) {
  return json{{"s", row.s},
              {"m0", row.m0},
              {"delta_clon", row.delta_clon},
              {"delta_numeric", row.delta_numeric},
              {"delta_uncertainty", row.delta_uncertainty},
              {"wigner_l1", row.wigner_l1},
              {"classical", row.classical}};
}

std::string merit_csv(std::span<const MeritReport> rows) {
  std::string out = kMeritCsvHeader;
  out += '\n';
  for (const auto& r : rows) {
    out += fmt::format("{:.17g},{},{:.17g},{:.17g},{:.17g},{:.17g}\n", r.s, r.m0, r.delta_clon, r.delta_numeric,
                       r.wigner_l1, r.classical);
  }
  return out;
}

std::string merit_json(std::span<const MeritReport> rows) {
  json arr = json::array();
  for (const auto& r : rows) arr.push_back(to_json(r));
  return arr.dump(2) + "\n";
}

std::string merit_svg(std::span<const MeritReport> rows) {
  constexpr double kWidth = 640, kHeight = 420, kMargin = 50;
  double y_lo = 0.4, y_hi = 1.0;
  for (const auto& r : rows) {
    y_lo = std::min({y_lo, r.delta_clon, r.wigner_l1});
    y_hi = std::max({y_hi, r.delta_clon, r.wigner_l1});
  }
  auto px = [&](double s) { return kMargin + s * (kWidth - 2 * kMargin); };
  auto py = [&](double v) { return kHeight - kMargin - (v - y_lo) / (y_hi - y_lo) * (kHeight - 2 * kMargin); };
  auto polyline = [&](auto value, const char* colour) {
    std::string pts;
    for (const auto& r : rows) pts += fmt::format("{:.2f},{:.2f} ", px(r.s), py(value(r)));
    return fmt::format("  <polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n", colour, pts);
  };

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n", kWidth,
      kHeight);
  svg += fmt::format("  <rect x=\"{0}\" y=\"{0}\" width=\"{1}\" height=\"{2}\" fill=\"none\" stroke=\"black\"/>\n",
                     kMargin, kWidth - 2 * kMargin, kHeight - 2 * kMargin);
  for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    svg += fmt::format("  <text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"11\" text-anchor=\"middle\">{}</text>\n", px(t),
                       kHeight - kMargin + 16, t);
  }
  for (int i = 0; i <= 4; ++i) {
    const double v = y_lo + (y_hi - y_lo) * i / 4.0;
    svg += fmt::format("  <text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"11\" text-anchor=\"end\">{:.2f}</text>\n",
                       kMargin - 6, py(v) + 4, v);
  }
  svg += fmt::format("  <text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"12\" text-anchor=\"middle\">s</text>\n",
                     kWidth / 2, kHeight - 12);
  if (!rows.empty()) {
    svg += polyline([](const MeritReport& r) { return r.delta_clon; }, "#c0392b");
    svg += polyline([](const MeritReport& r) { return r.wigner_l1; }, "#2c3e50");
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace gclone
