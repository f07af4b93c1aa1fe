#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "risp/core.hpp"

namespace risp {

// Square viewport mapping (-pi, pi]^2 to pixels, t1 rightward, t2 upward.
// All coordinates are printed with fixed %.4f formatting so identical input
// produces identical bytes.
class SvgCanvas {
public:
    explicit SvgCanvas(int size = 900) : size_(size) {
        body_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size_ << "\" height=\""
              << size_ << "\" viewBox=\"0 0 " << size_ << " " << size_ << "\">\n";
        body_ << "<rect width=\"" << size_ << "\" height=\"" << size_
              << "\" fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>\n";
    }

    void point(double t1, double t2, double radius, const std::string& color) {
        body_ << "<circle cx=\"" << fmt(px(t1)) << "\" cy=\"" << fmt(py(t2)) << "\" r=\""
              << fmt(radius) << "\" fill=\"" << color << "\"/>\n";
    }

    void hline(double t2, const std::string& color, double width) {
        body_ << "<line x1=\"0\" y1=\"" << fmt(py(t2)) << "\" x2=\"" << size_ << "\" y2=\""
              << fmt(py(t2)) << "\" stroke=\"" << color << "\" stroke-width=\"" << fmt(width)
              << "\"/>\n";
    }

    // Polyline split at the torus seam so curves do not streak across the canvas.
    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color,
                  double width) {
        if (pts.empty()) return;
        std::vector<std::pair<double, double>> segment;
        auto flush = [&]() {
            if (segment.size() >= 2) {
                body_ << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
                      << fmt(width) << "\" points=\"";
                for (const auto& p : segment)
                    body_ << fmt(px(p.first)) << ',' << fmt(py(p.second)) << ' ';
                body_ << "\"/>\n";
            }
            segment.clear();
        };
        for (size_t i = 0; i < pts.size(); ++i) {
            if (!segment.empty()) {
                const auto& prev = segment.back();
                if (std::abs(pts[i].first - prev.first) > kPi ||
                    std::abs(pts[i].second - prev.second) > kPi)
                    flush();
            }
            segment.push_back(pts[i]);
        }
        flush();
    }

    std::string str() {
        return body_.str() + "</svg>\n";
    }

private:
    double px(double t1) const { return (t1 + kPi) / (2.0 * kPi) * size_; }
    double py(double t2) const { return (kPi - t2) / (2.0 * kPi) * size_; }

    static std::string fmt(double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.4f", v);
        return buf;
    }

    int size_;
    std::ostringstream body_;
};

}  // namespace risp
