#pragma once

/// Capacity planning for voice over multi-cell 802.11 WLANs: hexagonal
/// layouts, pairwise interference classification, clique-based admission
/// control, two-layer slot coloring and closed-form per-cell capacity.

#include "capacity_model.hpp"
#include "clique_admission.hpp"
#include "conflict_graph.hpp"
#include "cotdma_coloring.hpp"
#include "geometry.hpp"
#include "rng.hpp"
#include "scenario.hpp"
#include "schema.hpp"
