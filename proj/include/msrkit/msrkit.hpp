#pragma once

// Umbrella header.

#include "msrkit/gf.hpp"
#include "msrkit/linalg.hpp"
#include "msrkit/matchings.hpp"
#include "msrkit/aset.hpp"
#include "msrkit/construct_r2.hpp"
#include "msrkit/construct_r3.hpp"
#include "msrkit/construct_r3plus.hpp"
#include "msrkit/verify.hpp"
#include "msrkit/qselect.hpp"
#include "msrkit/msr.hpp"
#include "msrkit/serialize.hpp"
