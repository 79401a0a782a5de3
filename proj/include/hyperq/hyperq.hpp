#pragma once

#include "algebra.hpp"
#include "axiom_report.hpp"
#include "errors.hpp"
#include "ext_nat.hpp"
#include "hypergroupoid.hpp"
#include "projcat.hpp"
#include "quantale.hpp"
#include "rational.hpp"
#include "realization.hpp"
#include "regular_rep.hpp"
#include "weighted.hpp"
