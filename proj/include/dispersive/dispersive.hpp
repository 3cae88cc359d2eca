#pragma once

#include "dispersive/core/error.hpp"
#include "dispersive/core/fft.hpp"
#include "dispersive/core/grid.hpp"
#include "dispersive/core/littlewood_paley.hpp"
#include "dispersive/core/parallel.hpp"
#include "dispersive/core/propagator.hpp"
#include "dispersive/core/rescale.hpp"
#include "dispersive/core/symbol.hpp"
#include "dispersive/dunkl/bessel.hpp"
#include "dispersive/dunkl/h_envelope.hpp"
#include "dispersive/dunkl/oscillatory.hpp"
#include "dispersive/dunkl/quadrature.hpp"
#include "dispersive/dunkl/radial.hpp"
#include "dispersive/harness/config.hpp"
#include "dispersive/harness/record.hpp"
#include "dispersive/harness/strichartz.hpp"
#include "dispersive/harness/suites.hpp"
#include "dispersive/kernel/decay_fit.hpp"
#include "dispersive/kernel/hessian_rank.hpp"
#include "dispersive/kernel/kernel.hpp"
#include "dispersive/kernel/verify.hpp"
#include "dispersive/norms/admissibility.hpp"
#include "dispersive/norms/mixed_norm.hpp"
#include "dispersive/norms/picard_exponents.hpp"
#include "dispersive/solver/duhamel.hpp"
#include "dispersive/solver/nonlinearity.hpp"
#include "dispersive/solver/picard.hpp"
