#ifndef COHTORUS_COHTORUS_HPP_
#define COHTORUS_COHTORUS_HPP_

#include "cohtorus/bundles.hpp"
#include "cohtorus/errors.hpp"
#include "cohtorus/frames.hpp"
#include "cohtorus/hermitian.hpp"
#include "cohtorus/landau.hpp"
#include "cohtorus/lattice.hpp"
#include "cohtorus/symplectic.hpp"
#include "cohtorus/theta.hpp"
#include "cohtorus/types.hpp"
#include "cohtorus/weyl_heisenberg.hpp"

#endif  // COHTORUS_COHTORUS_HPP_
