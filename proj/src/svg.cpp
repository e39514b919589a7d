// Copyright 2026 The geomatch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "geomatch/svg.hpp"

#include <cstdio>
#include <sstream>

#include "geomatch/io.hpp"

namespace geomatch {

namespace {

constexpr int kCanvas = 800;

std::string num(const Scalar& s) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", s.get_d());
  return buf;
}

const char* color_name(EdgeColor c) {
  switch (c) {
    case EdgeColor::Red: return "red";
    case EdgeColor::Green: return "green";
    case EdgeColor::Blue: return "blue";
    case EdgeColor::None: return "gray";
  }
  return "gray";
}

class Canvas {
 public:
  explicit Canvas(const BoundingBox& box) : box_(box) {
    Scalar w = box.xmax - box.xmin, h = box.ymax - box.ymin;
    scale_ = Scalar(kCanvas) / (w > h ? w : h);
    width_ = scale_ * w;
    height_ = scale_ * h;
  }

  std::string x(const Vec2& p) const { return num(scale_ * (p.x - box_.xmin)); }
  std::string y(const Vec2& p) const { return num(scale_ * (box_.ymax - p.y)); }
  std::string xy(const Vec2& p) const { return x(p) + "," + y(p); }
  std::string width() const { return num(width_); }
  std::string height() const { return num(height_); }

  std::string line(const Vec2& a, const Vec2& b, const std::string& style) const {
    return "<line x1=\"" + x(a) + "\" y1=\"" + y(a) + "\" x2=\"" + x(b) + "\" y2=\"" + y(b) + "\" " + style + "/>\n";
  }
  std::string dot(const Vec2& p, const std::string& r, const std::string& fill) const {
    return "<circle cx=\"" + x(p) + "\" cy=\"" + y(p) + "\" r=\"" + r + "\" fill=\"" + fill + "\"/>\n";
  }

 private:
  BoundingBox box_;
  Scalar scale_, width_, height_;
};

}  // namespace

SvgLayers parse_layers(const std::string& spec) {
  SvgLayers l{false, false, false, false};
  std::stringstream in(spec);
  int column = 1;
  for (std::string name; std::getline(in, name, ',');) {
    if (name == "segments")
      l.segments = true;
    else if (name == "extensions")
      l.extensions = true;
    else if (name == "cells")
      l.cells = true;
    else if (name == "dual")
      l.dual = true;
    else
      throw ParseError(1, column, "unknown layer '" + name + "'");
    column += static_cast<int>(name.size()) + 1;
  }
  return l;
}

std::string render_svg(const SvgScene& scene, const SvgLayers& layers, const BoundingBox& viewport) {
  Canvas c(viewport);
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + c.width() + "\" height=\"" + c.height() +
                    "\" viewBox=\"0 0 " + c.width() + " " + c.height() + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + c.width() + "\" height=\"" + c.height() + "\" fill=\"white\"/>\n";

  if (layers.cells && scene.subdivision) {
    out += "<g id=\"cells\">\n";
    for (const ConvexPolygon& cell : scene.subdivision->cells) {
      out += "<polygon points=\"";
      for (size_t i = 0; i < cell.vertices().size(); ++i) out += (i ? " " : "") + c.xy(cell.vertices()[i]);
      out += "\" fill=\"#f2f2f2\" stroke=\"#b0b0b0\" stroke-width=\"1\"/>\n";
    }
    out += "</g>\n";
  }
  if (layers.extensions && scene.extension) {
    out += "<g id=\"extensions\">\n";
    for (const Ray& r : scene.extension->rays)
      out += c.line(r.origin, r.terminus, "stroke=\"#606060\" stroke-width=\"1\" stroke-dasharray=\"4 3\"");
    out += "</g>\n";
  }
  for (size_t k = 0; k < scene.overlays.size(); ++k) {
    const SvgOverlay& o = scene.overlays[k];
    out += "<g id=\"overlay-" + std::to_string(k) + "\">\n";
    for (const Segment& s : o.matching->edges())
      out += c.line(o.matching->point(s.a), o.matching->point(s.b), "stroke=\"" + o.color + "\" stroke-width=\"2\"");
    out += "</g>\n";
  }
  if (layers.segments && scene.matching) {
    const Matching& m = *scene.matching;
    out += "<g id=\"segments\">\n";
    for (const Segment& s : m.edges()) out += c.line(m.point(s.a), m.point(s.b), "stroke=\"black\" stroke-width=\"3\"");
    for (int i = 0; i < m.base().size(); ++i) out += c.dot(m.point(i), "4", "black");
    out += "</g>\n";
  }
  if (layers.dual && scene.dual && scene.subdivision && scene.matching) {
    const ConvexSubdivision& sub = *scene.subdivision;
    out += "<g id=\"dual\">\n";
    for (const DualEdge& e : scene.dual->edges) {
      const Vec2 from = sub.cells[static_cast<size_t>(e.u)].vertex_centroid();
      const Vec2 to = sub.cells[static_cast<size_t>(e.v)].vertex_centroid();
      out += "<path d=\"M " + c.xy(from) + " L " + c.xy(scene.matching->point(e.vertex)) + " L " + c.xy(to) +
             "\" fill=\"none\" stroke=\"" + color_name(e.color) + "\" stroke-width=\"1.5\"/>\n";
    }
    for (const ConvexPolygon& cell : sub.cells) out += c.dot(cell.vertex_centroid(), "5", "#404040");
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace geomatch
