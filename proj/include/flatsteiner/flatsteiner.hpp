#pragma once

// Umbrella header: Steiner trees and Steiner ratios on the Euclidean plane,
// on flat cones, and on disphenoid (isosceles-tetrahedron) surfaces.

#include "flatsteiner/covering.hpp"
#include "flatsteiner/disphenoid.hpp"
#include "flatsteiner/json_io.hpp"
#include "flatsteiner/mst.hpp"
#include "flatsteiner/nelder_mead.hpp"
#include "flatsteiner/quotient.hpp"
#include "flatsteiner/ratio.hpp"
#include "flatsteiner/rng.hpp"
#include "flatsteiner/space.hpp"
#include "flatsteiner/steiner_plane.hpp"
#include "flatsteiner/svg.hpp"
#include "flatsteiner/topology.hpp"
#include "flatsteiner/tree.hpp"
#include "flatsteiner/vec2.hpp"
