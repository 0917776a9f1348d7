#pragma once

#include "thomforge/error.hpp"
#include "thomforge/rational.hpp"
#include "thomforge/linalg.hpp"
#include "thomforge/cdga.hpp"
#include "thomforge/parse.hpp"
#include "thomforge/dg_algebra.hpp"
#include "thomforge/cohomology.hpp"
#include "thomforge/morphism.hpp"
#include "thomforge/thom.hpp"
#include "thomforge/weight.hpp"
#include "thomforge/minimal_model.hpp"
#include "thomforge/massey.hpp"
#include "thomforge/lie.hpp"
#include "thomforge/quillen.hpp"
#include "thomforge/hodge.hpp"
