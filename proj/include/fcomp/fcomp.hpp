#pragma once

#include "fcomp/core.hpp"
#include "fcomp/entropy.hpp"
#include "fcomp/fixtures.hpp"
#include "fcomp/geometry.hpp"
#include "fcomp/harness.hpp"
#include "fcomp/hypergraph.hpp"
#include "fcomp/instance_io.hpp"
#include "fcomp/lzw.hpp"
#include "fcomp/modular_codec.hpp"
#include "fcomp/polar.hpp"
#include "fcomp/rate_curve.hpp"
#include "fcomp/rng.hpp"
