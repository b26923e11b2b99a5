#pragma once

#include "carleman.hpp"
#include "classical.hpp"
#include "complexity.hpp"
#include "engine.hpp"
#include "error_bounds.hpp"
#include "fock.hpp"
#include "lattice.hpp"
#include "pauli.hpp"
#include "streaming.hpp"
#include "trunc_hermite.hpp"
