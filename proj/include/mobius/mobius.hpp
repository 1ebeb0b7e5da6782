#pragma once

#include "mobius/errors.hpp"
#include "mobius/theta.hpp"
#include "mobius/geometry.hpp"
#include "mobius/dynamics.hpp"
#include "mobius/fock.hpp"
#include "mobius/states.hpp"
#include "mobius/projection.hpp"
#include "mobius/verify.hpp"
