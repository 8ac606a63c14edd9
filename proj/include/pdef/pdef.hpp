#ifndef PDEF_PDEF_HPP
#define PDEF_PDEF_HPP

#include <pdef/algebra.hpp>
#include <pdef/cohomology.hpp>
#include <pdef/combinatorics.hpp>
#include <pdef/deform.hpp>
#include <pdef/error.hpp>
#include <pdef/linalg.hpp>
#include <pdef/linfty.hpp>
#include <pdef/multivec.hpp>
#include <pdef/singularity.hpp>

#endif
