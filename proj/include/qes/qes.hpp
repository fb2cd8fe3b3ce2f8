#pragma once

#include "qes/core_model.hpp"
#include "qes/errors.hpp"
#include "qes/heun_series.hpp"
#include "qes/oracle.hpp"
#include "qes/polynomial.hpp"
#include "qes/spectrum.hpp"
#include "qes/tridiagonal.hpp"
#include "qes/wavefunction.hpp"
