#pragma once

#include "polydual/errors.hpp"
#include "polydual/exact.hpp"
#include "polydual/graph.hpp"
#include "polydual/embedding.hpp"
#include "polydual/stress2d.hpp"
#include "polydual/cdv3d.hpp"
#include "polydual/lovasz.hpp"
#include "polydual/pipelines.hpp"
#include "polydual/fixtures.hpp"
#include "polydual/io.hpp"
#include "polydual/verify.hpp"
