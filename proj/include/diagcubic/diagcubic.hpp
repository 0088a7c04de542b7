#pragma once

#include "diagcubic/integer.hpp"
#include "diagcubic/eisenstein.hpp"
#include "diagcubic/factor.hpp"
#include "diagcubic/completion.hpp"
#include "diagcubic/curve.hpp"
#include "diagcubic/residues.hpp"
#include "diagcubic/localsolve.hpp"
#include "diagcubic/selmer.hpp"
#include "diagcubic/surface.hpp"
#include "diagcubic/oracle.hpp"
