#pragma once

#include "fca/bitset.hpp"
#include "fca/context.hpp"
#include "fca/cxt.hpp"
#include "fca/dot.hpp"
#include "fca/errors.hpp"
#include "fca/families.hpp"
#include "fca/generalization.hpp"
#include "fca/lattice.hpp"
#include "fca/scheme_file.hpp"
