#pragma once

#include "rosm/graph.hpp"
#include "rosm/matching.hpp"
#include "rosm/exact.hpp"
#include "rosm/stream.hpp"
#include "rosm/greedy.hpp"
#include "rosm/augmenting.hpp"
#include "rosm/augmenter.hpp"
#include "rosm/pipelines.hpp"
#include "rosm/generators.hpp"
#include "rosm/bench.hpp"
