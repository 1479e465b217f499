#pragma once

#include "psybracket/algebra.hpp"
#include "psybracket/diagram.hpp"
#include "psybracket/enumerate.hpp"
#include "psybracket/error.hpp"
#include "psybracket/invariant.hpp"
#include "psybracket/moves.hpp"
#include "psybracket/pkd_format.hpp"
#include "psybracket/psy_format.hpp"
#include "psybracket/tensor.hpp"
