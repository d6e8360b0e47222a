#include <algorithm>
#include <cmath>
#include <sstream>

#include "genecon/report.hpp"

namespace genecon {

namespace {

constexpr const char* kModelColor = "#1f4e9c";
constexpr const char* kNullColor = "#c0392b";
constexpr int kMargin = 24;
constexpr int kGap = 18;
constexpr int kTitleHeight = 40;

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double x) { return format_sig6(x); }

struct Frame {
  double x = 0, y = 0, w = 0, h = 0;
  double x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;

  double px(double v) const { return x + (v - x_lo) / (x_hi - x_lo) * w; }
  double py(double v) const { return y + h - (v - y_lo) / (y_hi - y_lo) * h; }
};

class Svg {
 public:
  Svg(int width, int height) : width_(width), height_(height) {}

  std::ostringstream& body() { return body_; }

  void frame(const Frame& f) {
    body_ << "    <rect class=\"frame\" x=\"" << num(f.x) << "\" y=\"" << num(f.y) << "\" width=\""
          << num(f.w) << "\" height=\"" << num(f.h) << "\" fill=\"none\" stroke=\"#888\"/>\n";
  }

  void zero_line(const Frame& f) {
    if (f.y_lo >= 0.0 || f.y_hi <= 0.0) return;
    body_ << "    <line class=\"zero-axis\" x1=\"" << num(f.x) << "\" y1=\"" << num(f.py(0.0))
          << "\" x2=\"" << num(f.x + f.w) << "\" y2=\"" << num(f.py(0.0))
          << "\" stroke=\"#ccc\"/>\n";
  }

  void text(double x, double y, std::string_view cls, std::string_view content,
            std::string_view anchor = "start", std::string_view fill = "#222") {
    body_ << "    <text class=\"" << cls << "\" x=\"" << num(x) << "\" y=\"" << num(y)
          << "\" text-anchor=\"" << anchor << "\" fill=\"" << fill << "\">" << escape(content)
          << "</text>\n";
  }

  void polyline(const Frame& f, const std::vector<double>& xs, const Vector& ys,
                std::string_view cls, std::string_view style) {
    body_ << "    <polyline class=\"" << cls << "\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) body_ << ' ';
      body_ << num(f.px(xs[i])) << ',' << num(f.py(ys(static_cast<Index>(i))));
    }
    body_ << "\" fill=\"none\" " << style << "/>\n";
  }

  std::string finish(std::string_view title, const std::optional<Json>& provenance) const {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width_
        << "\" height=\"" << height_ << "\" viewBox=\"0 0 " << width_ << ' ' << height_
        << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    out << "  <title>" << escape(title) << "</title>\n";
    if (provenance) {
      out << "  <metadata id=\"provenance\">" << escape(provenance->dump()) << "</metadata>\n";
    }
    out << "  <rect class=\"background\" width=\"" << width_ << "\" height=\"" << height_
        << "\" fill=\"white\"/>\n";
    out << "  <text class=\"title\" x=\"" << kMargin << "\" y=\"26\" font-size=\"15\">"
        << escape(title) << "</text>\n";
    out << body_.str() << "</svg>\n";
    return out.str();
  }

 private:
  int width_;
  int height_;
  std::ostringstream body_;
};

std::string curve_style(bool model, double width = 2.0) {
  std::string s = std::string("stroke=\"") + (model ? kModelColor : kNullColor) +
                  "\" stroke-width=\"" + num(width) + "\"";
  if (!model) s += " stroke-dasharray=\"6,4\"";
  return s;
}

struct Slot {
  bool model;
  Index rank;  // 1-based within its role
};

// PC1 and the simplest null vector share the first row; the remaining model
// vectors follow in eigenvalue order, then the remaining null vectors in
// simplicity order.
std::vector<Slot> panel_order(Index J, Index null_dim) {
  std::vector<Slot> out;
  if (J > 0) out.push_back({true, 1});
  if (null_dim > 0) out.push_back({false, 1});
  for (Index k = 2; k <= J; ++k) out.push_back({true, k});
  for (Index k = 2; k <= null_dim; ++k) out.push_back({false, k});
  return out;
}

}  // namespace

std::string render_partition_figure(const FigureSpec& spec) {
  const SubspacePartition& part = spec.partition;
  const Index k = part.dim();
  const int pw = spec.panel_width;
  const int ph = spec.panel_height;
  const int rows = static_cast<int>((k + 1) / 2);
  const int left_w = 2 * pw + kGap;
  const int right_x = kMargin + left_w + 4 * kGap + 12;
  const int right_w = 300;
  const int scatter_h = 240;
  const int bar_h = 200;
  const int width = right_x + right_w + kMargin;
  const int height = std::max(kTitleHeight + rows * (ph + kGap + 14),
                              kTitleHeight + scatter_h + bar_h + 3 * kGap + 28) +
                     kMargin;

  Svg svg(width, height);
  auto& b = svg.body();
  const auto& pts = spec.grid.points();

  const auto order = panel_order(part.J, part.null_dim());
  for (std::size_t slot = 0; slot < order.size(); ++slot) {
    const auto [model, rank] = order[slot];
    const int row = static_cast<int>(slot / 2);
    const int col = static_cast<int>(slot % 2);
    Frame f{.x = static_cast<double>(kMargin + col * (pw + kGap)),
            .y = static_cast<double>(kTitleHeight + 14 + row * (ph + kGap + 14)),
            .w = static_cast<double>(pw),
            .h = static_cast<double>(ph),
            .x_lo = pts.front(),
            .x_hi = pts.back(),
            .y_lo = -1.0,
            .y_hi = 1.0};
    const Index idx = rank - 1;
    const Vector v = model ? Vector(part.model_vectors.col(idx)) : Vector(part.null_basis.vectors.col(idx));
    const char* role = model ? "model" : "null";
    const double score = model ? part.model_scores(idx) : part.null_basis.scores(idx);
    const double proportion = part.proportions(model ? idx : part.J + idx);

    b << "  <g class=\"panel vector-panel " << role << "\" data-role=\"" << role
      << "\" data-rank=\"" << rank << "\">\n";
    svg.frame(f);
    svg.zero_line(f);
    svg.polyline(f, pts, v, std::string("curve ") + role, curve_style(model));
    svg.text(f.x + 6, f.y + 16, std::string("label ") + role, std::to_string(rank), "start",
             model ? kModelColor : kNullColor);
    std::string caption = (model ? "PC " : "simplicity ") + std::to_string(rank) +
                          ": score " + num(score) + ", variance " + num(proportion);
    svg.text(f.x, f.y - 4, "caption", caption);
    b << "  </g>\n";
  }
  if (!order.empty()) {
    const int last_row = static_cast<int>((order.size() - 1) / 2);
    svg.text(kMargin + left_w / 2.0, kTitleHeight + 14 + (last_row + 1) * (ph + kGap + 14) - 2,
             "axis-label", spec.x_label, "middle");
  }

  // Scatter of (proportion of variance, simplicity score).
  {
    Frame f{.x = static_cast<double>(right_x),
            .y = static_cast<double>(kTitleHeight + 14),
            .w = static_cast<double>(right_w),
            .h = static_cast<double>(scatter_h),
            .x_lo = 0.0,
            .x_hi = 1.0,
            .y_lo = 0.0,
            .y_hi = spec.score_upper_bound > 0.0 ? spec.score_upper_bound : 1.0};
    b << "  <g class=\"panel scatter-panel\">\n";
    svg.frame(f);
    svg.text(f.x + f.w / 2, f.y + f.h + 16, "axis-label", "proportion of genetic variance",
             "middle");
    svg.text(f.x - 6, f.y + 10, "axis-label", num(f.y_hi), "end");
    svg.text(f.x - 6, f.y + f.h, "axis-label", "0", "end");
    svg.text(f.x + f.w, f.y + f.h + 16, "axis-label", "1", "end");
    svg.text(f.x, f.y - 4, "caption", "simplicity score vs. variance");
    const Vector scores = part.scores();
    for (Index i = 0; i < k; ++i) {
      const bool model = i < part.J;
      const Index rank = model ? i + 1 : i - part.J + 1;
      const char* role = model ? "model" : "null";
      const double prop = part.proportions(i);
      const double cx = f.px(prop);
      const double cy = f.py(scores(i));
      b << "    <circle class=\"point " << role << "\" data-role=\"" << role << "\" data-rank=\""
        << rank << "\" data-proportion=\"" << num(prop) << "\" data-score=\"" << num(scores(i))
        << "\" cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"4\" fill=\""
        << (model ? kModelColor : kNullColor) << "\"/>\n";
      svg.text(cx + 6, cy - 4, std::string("point-label ") + role, std::to_string(rank), "start",
               model ? kModelColor : kNullColor);
    }
    b << "  </g>\n";
  }

  // Model vs. null share of the genetic variance.
  {
    Frame f{.x = static_cast<double>(right_x),
            .y = static_cast<double>(kTitleHeight + 14 + scatter_h + 3 * kGap),
            .w = static_cast<double>(right_w),
            .h = static_cast<double>(bar_h),
            .x_lo = 0.0,
            .x_hi = 1.0,
            .y_lo = 0.0,
            .y_hi = 1.15};
    b << "  <g class=\"panel bar-panel\">\n";
    svg.frame(f);
    svg.text(f.x, f.y - 4, "caption", "total genetic variance");
    const double bar_w = f.w / 4.0;
    const double fractions[2] = {part.model_variance_fraction, part.null_variance_fraction};
    for (int i = 0; i < 2; ++i) {
      const bool model = i == 0;
      const char* role = model ? "model" : "null";
      const double x = f.x + f.w * (model ? 0.15 : 0.6);
      const double top = f.py(fractions[i]);
      b << "    <rect class=\"bar " << role << "\" data-fraction=\"" << num(fractions[i])
        << "\" x=\"" << num(x) << "\" y=\"" << num(top) << "\" width=\"" << num(bar_w)
        << "\" height=\"" << num(f.y + f.h - top) << "\" fill=\""
        << (model ? kModelColor : kNullColor) << "\"/>\n";
      svg.text(x + bar_w / 2, f.y + f.h + 16, "axis-label",
               model ? "model space" : "nearly null space", "middle");
      svg.text(x + bar_w / 2, top - 4, "value-label", num(fractions[i]), "middle");
    }
    b << "  </g>\n";
  }

  return svg.finish(spec.title, spec.provenance);
}

std::string render_study_figure(const StudySummary& s, const StudyFigureSpec& spec) {
  const Index cols = 1 + s.null_dim;
  const int pw = spec.panel_width;
  const int ph = spec.panel_height;
  const int left = kMargin + 40;
  const int width = left + kMargin + static_cast<int>(cols) * (pw + kGap);
  const int height = kTitleHeight + 2 * (ph + kGap + 28) + kMargin;
  const auto& pts = s.params.grid.points();

  double response_max = 0.0;
  for (const auto& r : s.replicates) {
    response_max = std::max(response_max, r.simplest_response.cwiseAbs().maxCoeff());
    response_max = std::max(response_max, r.null_pc_responses.cwiseAbs().maxCoeff());
  }
  response_max = std::max(response_max, s.true_simplest_response.cwiseAbs().maxCoeff());
  if (!(response_max > 0.0)) response_max = 1.0;

  Svg svg(width, height);
  auto& b = svg.body();

  auto panel = [&](Index col, int row, const std::string& kind, const std::string& caption,
                   double y_range, auto&& replicate_curve, const Vector* truth) {
    Frame f{.x = static_cast<double>(left + col * (pw + kGap)),
            .y = static_cast<double>(kTitleHeight + 14 + row * (ph + kGap + 28)),
            .w = static_cast<double>(pw),
            .h = static_cast<double>(ph),
            .x_lo = pts.front(),
            .x_hi = pts.back(),
            .y_lo = -y_range,
            .y_hi = y_range};
    b << "  <g class=\"panel study-panel " << kind << "\" data-replicates=\""
      << s.replicates.size() << "\">\n";
    svg.frame(f);
    svg.zero_line(f);
    svg.text(f.x, f.y - 4, "caption", caption);
    if (col == 0) svg.text(f.x - 4, f.y + 10, "axis-label", num(y_range), "end");
    for (const auto& r : s.replicates) {
      svg.polyline(f, pts, replicate_curve(r), "curve replicate",
                   "stroke=\"#7f8c8d\" stroke-opacity=\"0.35\" stroke-width=\"1\"");
    }
    if (truth) svg.polyline(f, pts, *truth, "curve truth", "stroke=\"#111\" stroke-width=\"3\"");
    b << "  </g>\n";
  };

  panel(0, 0, "vectors simplest", "simplest nearly null vector", 1.0,
        [](const ReplicateResult& r) { return r.simplest; }, &s.true_simplest);
  for (Index c = 0; c < s.null_dim; ++c) {
    const Vector truth = s.true_null_pcs.col(c);
    panel(c + 1, 0, "vectors pc", "PC " + std::to_string(s.J + c + 1), 1.0,
          [c](const ReplicateResult& r) { return Vector(r.null_pcs.col(c)); }, &truth);
  }
  panel(0, 1, "responses simplest",
        "response, simplest (mean norm " + num(s.simplest_response.mean) + ")", response_max,
        [](const ReplicateResult& r) { return r.simplest_response; }, nullptr);
  for (Index c = 0; c < s.null_dim; ++c) {
    panel(c + 1, 1, "responses pc",
          "response, PC " + std::to_string(s.J + c + 1) + " (mean norm " +
              num(s.null_pc_response[static_cast<std::size_t>(c)].mean) + ")",
          response_max, [c](const ReplicateResult& r) { return Vector(r.null_pc_responses.col(c)); },
          nullptr);
  }
  svg.text(width / 2.0, height - 8, "axis-label", spec.x_label, "middle");
  return svg.finish(spec.title, spec.provenance);
}

}  // namespace genecon
