#pragma once

// Umbrella header: unitary synthesis by quantum Householder reflections,
// pulse-level realization, and time-domain verification.

#include "qhr/complex_matrix.hpp"
#include "qhr/decompose.hpp"
#include "qhr/dynamics.hpp"
#include "qhr/gamma.hpp"
#include "qhr/io.hpp"
#include "qhr/pulse.hpp"
#include "qhr/qft.hpp"
#include "qhr/random_unitary.hpp"
#include "qhr/reflection.hpp"
#include "qhr/version.hpp"
