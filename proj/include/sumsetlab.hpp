#pragma once

#include "sumsetlab/bounds.hpp"
#include "sumsetlab/certify.hpp"
#include "sumsetlab/cyclic.hpp"
#include "sumsetlab/geom2d.hpp"
#include "sumsetlab/intset.hpp"
#include "sumsetlab/modred.hpp"
#include "sumsetlab/scan.hpp"
#include "sumsetlab/serialize.hpp"
