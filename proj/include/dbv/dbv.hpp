#ifndef DBV_DBV_HPP
#define DBV_DBV_HPP

#include "algebra.hpp"
#include "axioms.hpp"
#include "errors.hpp"
#include "examples.hpp"
#include "finite_dbv.hpp"
#include "homology.hpp"
#include "io.hpp"
#include "landau_ginzburg.hpp"
#include "lifting.hpp"
#include "linalg.hpp"
#include "obstruction.hpp"
#include "qdelta.hpp"
#include "scalar.hpp"
#include "series.hpp"
#include "solver.hpp"
#include "vector.hpp"
#include "verify.hpp"

#endif // DBV_DBV_HPP
