#ifndef COMMCALC_COMMCALC_HPP
#define COMMCALC_COMMCALC_HPP

#include "algebra.hpp"
#include "catalog.hpp"
#include "commutators.hpp"
#include "enumerate.hpp"
#include "error.hpp"
#include "free_product.hpp"
#include "lower_bound.hpp"
#include "structures.hpp"
#include "term.hpp"

#endif
