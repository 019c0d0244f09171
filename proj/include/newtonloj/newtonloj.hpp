#pragma once

#include "newtonloj/exact_linalg.hpp"
#include "newtonloj/face_enumeration.hpp"
#include "newtonloj/genericity.hpp"
#include "newtonloj/lattice.hpp"
#include "newtonloj/lojasiewicz.hpp"
#include "newtonloj/nondegeneracy.hpp"
#include "newtonloj/numeric.hpp"
#include "newtonloj/polyhedra.hpp"
#include "newtonloj/polynomial.hpp"
#include "newtonloj/polynomial_io.hpp"
#include "newtonloj/rational.hpp"
#include "newtonloj/report_json.hpp"
#include "newtonloj/reproduction.hpp"
#include "newtonloj/run_config.hpp"
#include "newtonloj/univariate.hpp"
