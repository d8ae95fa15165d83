#pragma once

// Umbrella header: short-rate models with constant and sinusoidally
// time-varying mean reversion, Monte Carlo and closed-form bond pricing,
// simplex calibration to Treasury zero curves, and spectral periodicity
// diagnostics for yield histories.

#include "ratecycle/calib.hpp"
#include "ratecycle/csv.hpp"
#include "ratecycle/dates.hpp"
#include "ratecycle/fft.hpp"
#include "ratecycle/hw.hpp"
#include "ratecycle/mc.hpp"
#include "ratecycle/nelder_mead.hpp"
#include "ratecycle/sinhw.hpp"
#include "ratecycle/spectral.hpp"
#include "ratecycle/termstructure.hpp"
#include "ratecycle/version.hpp"
