#pragma once

#include "bounds.hpp"
#include "centerpoint.hpp"
#include "constructions.hpp"
#include "datagen.hpp"
#include "deepest.hpp"
#include "depth.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "hamsandwich.hpp"
#include "io.hpp"
#include "lp.hpp"
#include "pencil.hpp"
#include "random.hpp"
#include "scalar.hpp"
#include "sixsector.hpp"
#include "svg.hpp"
#include "tverberg.hpp"
