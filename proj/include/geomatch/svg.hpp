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


// SVG drawings of matchings, extensions, cells and dual multigraphs.
// Coordinates are printed as 12-significant-digit decimals; the geometry
// itself stays exact.

#pragma once

#include <string>
#include <vector>

#include "geomatch/geometry.hpp"
#include "geomatch/subdivision.hpp"

namespace geomatch {

struct SvgLayers {
  bool segments = true;
  bool extensions = true;
  bool cells = true;
  bool dual = true;
};

// Comma-separated subset of "segments,extensions,cells,dual". Throws
// ParseError on an unknown name.
SvgLayers parse_layers(const std::string& spec);

struct SvgOverlay {
  const Matching* matching = nullptr;
  std::string color;
};

struct SvgScene {
  const Matching* matching = nullptr;
  const ExtensionGeometry* extension = nullptr;
  const ConvexSubdivision* subdivision = nullptr;
  const DualMultigraph* dual = nullptr;  // edge colors taken from the edges
  std::vector<SvgOverlay> overlays;
};

// Everything is mapped from `viewport` onto an 800-unit canvas, so scenes
// drawn with one viewport line up.
std::string render_svg(const SvgScene& scene, const SvgLayers& layers, const BoundingBox& viewport);

}  // namespace geomatch
