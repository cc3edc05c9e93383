#ifndef WIGNER_WIGNER_HPP
#define WIGNER_WIGNER_HPP

#include "wigner/asymptotic_rdm.hpp"
#include "wigner/classical_crystal.hpp"
#include "wigner/entropy.hpp"
#include "wigner/finite_g.hpp"
#include "wigner/normal_modes.hpp"
#include "wigner/report.hpp"
#include "wigner/two_body.hpp"

#endif // WIGNER_WIGNER_HPP
