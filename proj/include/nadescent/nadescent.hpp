#pragma once

#include "nadescent/descent_arith.hpp"
#include "nadescent/errors.hpp"
#include "nadescent/integer.hpp"
#include "nadescent/iterated_words.hpp"
#include "nadescent/json_io.hpp"
#include "nadescent/lie_dims.hpp"
#include "nadescent/newton_polygon.hpp"
#include "nadescent/padic_number.hpp"
#include "nadescent/padic_series.hpp"
#include "nadescent/pipeline.hpp"
#include "nadescent/selmer_bounds.hpp"
#include "nadescent/two_sided_search.hpp"
#include "nadescent/zero_isolation.hpp"
