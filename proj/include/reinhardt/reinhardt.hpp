#pragma once

#include "reinhardt/rational.hpp"
#include "reinhardt/moduli_poly.hpp"
#include "reinhardt/domain.hpp"
#include "reinhardt/log_geometry.hpp"
#include "reinhardt/classification.hpp"
#include "reinhardt/automorphisms.hpp"
#include "reinhardt/levi.hpp"
#include "reinhardt/contact.hpp"
#include "reinhardt/json_io.hpp"
