#ifndef HAWKTELE_HAWKTELE_HPP
#define HAWKTELE_HAWKTELE_HPP

#include "hawktele/analysis.hpp"
#include "hawktele/error.hpp"
#include "hawktele/horizon.hpp"
#include "hawktele/numeric.hpp"
#include "hawktele/protocol.hpp"
#include "hawktele/qla.hpp"
#include "hawktele/weakmeas.hpp"

#endif  // HAWKTELE_HAWKTELE_HPP
