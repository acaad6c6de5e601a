#ifndef WHEQ_WHEQ_HPP
#define WHEQ_WHEQ_HPP

#include "wheq/baselines.hpp"
#include "wheq/benchmark.hpp"
#include "wheq/eme.hpp"
#include "wheq/histogram.hpp"
#include "wheq/image.hpp"
#include "wheq/image_io.hpp"
#include "wheq/pipeline.hpp"
#include "wheq/threshold.hpp"
#include "wheq/tonemap.hpp"

#endif  // WHEQ_WHEQ_HPP
