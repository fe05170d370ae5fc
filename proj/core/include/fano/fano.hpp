// fano.hpp — umbrella header.
#pragma once

#include "fano/core.hpp"
#include "fano/dynamics.hpp"
#include "fano/figures.hpp"
#include "fano/generator.hpp"
#include "fano/observables.hpp"
#include "fano/steadystate.hpp"
#include "fano/sweep.hpp"
#include "fano/table.hpp"
#include "fano/transport.hpp"
