#pragma once

#include "pantsflat/rational.hpp"
#include "pantsflat/slope.hpp"
#include "pantsflat/farey.hpp"
#include "pantsflat/orbifold.hpp"
#include "pantsflat/boundary.hpp"
#include "pantsflat/pieces.hpp"
#include "pantsflat/flats.hpp"
#include "pantsflat/shadows.hpp"
#include "pantsflat/io.hpp"
