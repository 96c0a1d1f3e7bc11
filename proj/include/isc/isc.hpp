#pragma once

#include "isc/channels.hpp"
#include "isc/codes.hpp"
#include "isc/decoder.hpp"
#include "isc/field.hpp"
#include "isc/interpolation.hpp"
#include "isc/io.hpp"
#include "isc/linearized.hpp"
#include "isc/rng.hpp"
#include "isc/rootfinding.hpp"
#include "isc/simulator.hpp"
