#pragma once

#include "errors.hpp"
#include "multigraph.hpp"
#include "series_parallel.hpp"
#include "encoding.hpp"
#include "reducer.hpp"
#include "colorer.hpp"
#include "oracle.hpp"
#include "io.hpp"
