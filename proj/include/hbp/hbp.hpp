#pragma once

#include <hbp/rational.hpp>
#include <hbp/polynomial.hpp>
#include <hbp/truncated_series.hpp>
#include <hbp/hb_table.hpp>
#include <hbp/sums_products.hpp>
#include <hbp/identity_suite.hpp>
