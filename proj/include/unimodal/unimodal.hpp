#pragma once

#include "unimodal/interval.hpp"
#include "unimodal/special_functions.hpp"
#include "unimodal/exact_counts.hpp"
#include "unimodal/modular_sums.hpp"
#include "unimodal/asymptotic.hpp"
#include "unimodal/rademacher.hpp"
#include "unimodal/verifier.hpp"
