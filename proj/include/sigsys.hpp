#ifndef SIGSYS_HPP
#define SIGSYS_HPP

#include "sigsys/formula.hpp"
#include "sigsys/syntax.hpp"
#include "sigsys/sat.hpp"
#include "sigsys/circuit.hpp"
#include "sigsys/logic.hpp"
#include "sigsys/signing.hpp"
#include "sigsys/defaults.hpp"
#include "sigsys/oracle.hpp"
#include "sigsys/qbf.hpp"
#include "sigsys/encoder.hpp"
#include "sigsys/selftest.hpp"
#include "sigsys/solver_bridge.hpp"

#endif  // SIGSYS_HPP
