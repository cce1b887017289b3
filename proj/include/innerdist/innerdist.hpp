#pragma once

#include "innerdist/core.hpp"
#include "innerdist/domain.hpp"
#include "innerdist/fractal.hpp"
#include "innerdist/geodesic.hpp"
#include "innerdist/io.hpp"
#include "innerdist/oracle.hpp"
#include "innerdist/painleve.hpp"
#include "innerdist/util.hpp"
#include "innerdist/verifier.hpp"
