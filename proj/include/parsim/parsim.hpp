#ifndef PARSIM_PARSIM_HPP
#define PARSIM_PARSIM_HPP

#include "parsim/baselines/baselines.hpp"
#include "parsim/core/lazify.hpp"
#include "parsim/core/simulate.hpp"
#include "parsim/fitf/fitf.hpp"
#include "parsim/fnr/fnr.hpp"
#include "parsim/mts/ftsp.hpp"
#include "parsim/offline/belady.hpp"
#include "parsim/predictors/action_predictors.hpp"
#include "parsim/predictors/fitf_oracle.hpp"

#endif  // PARSIM_PARSIM_HPP
