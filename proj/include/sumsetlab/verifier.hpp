#pragma once

// Certificates, JSON forms and scans.

#include "sumsetlab/certify.hpp"
#include "sumsetlab/scan.hpp"
#include "sumsetlab/serialize.hpp"
