#ifndef EXPOSOME_EXPOSOME_HPP
#define EXPOSOME_EXPOSOME_HPP

#include "exposome/cluster.hpp"
#include "exposome/codes.hpp"
#include "exposome/errors.hpp"
#include "exposome/export.hpp"
#include "exposome/graph.hpp"
#include "exposome/groups.hpp"
#include "exposome/ingest.hpp"
#include "exposome/metrics.hpp"
#include "exposome/temporal.hpp"

#endif
