#pragma once

// Semantic ("strong") dependency analysis for Debian-style package
// repositories: SAT-backed installability and strong-dependency queries,
// impact sets, sensitivity, dominance clustering, small-world statistics,
// and upgrade risk scoring.

#include "strongdeps/analysis.hpp"
#include "strongdeps/encoding.hpp"
#include "strongdeps/engine.hpp"
#include "strongdeps/errors.hpp"
#include "strongdeps/graph.hpp"
#include "strongdeps/graph_stats.hpp"
#include "strongdeps/io.hpp"
#include "strongdeps/model.hpp"
#include "strongdeps/parser.hpp"
#include "strongdeps/ratio.hpp"
#include "strongdeps/sat.hpp"
#include "strongdeps/upgrade.hpp"
#include "strongdeps/version.hpp"
