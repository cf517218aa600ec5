#pragma once

// Umbrella header.

#include "clawbreak/bitset.hpp"
#include "clawbreak/claw_analysis.hpp"
#include "clawbreak/claw_free.hpp"
#include "clawbreak/conflict_graph.hpp"
#include "clawbreak/edge_ledger.hpp"
#include "clawbreak/errors.hpp"
#include "clawbreak/experiments.hpp"
#include "clawbreak/json_io.hpp"
#include "clawbreak/ledger_oracle.hpp"
#include "clawbreak/network.hpp"
#include "clawbreak/rng.hpp"
#include "clawbreak/scheduling.hpp"
#include "clawbreak/topologies.hpp"
