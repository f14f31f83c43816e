#pragma once

#include "cliquesched/core.hpp"
#include "cliquesched/dispatch.hpp"
#include "cliquesched/enum_solvers.hpp"
#include "cliquesched/errors.hpp"
#include "cliquesched/flow_solvers.hpp"
#include "cliquesched/generators.hpp"
#include "cliquesched/ident.hpp"
#include "cliquesched/io.hpp"
#include "cliquesched/ipmodels.hpp"
#include "cliquesched/netopt.hpp"
#include "cliquesched/oracle.hpp"
#include "cliquesched/reductions.hpp"
