#pragma once

#include "noma/baselines.hpp"
#include "noma/cellopt.hpp"
#include "noma/errors.hpp"
#include "noma/experiment.hpp"
#include "noma/instance_io.hpp"
#include "noma/matching.hpp"
#include "noma/netopt.hpp"
#include "noma/pairing.hpp"
#include "noma/powersplit.hpp"
#include "noma/scenario.hpp"
#include "noma/verify.hpp"
