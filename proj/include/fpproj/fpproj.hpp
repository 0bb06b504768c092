#pragma once

#include "fpproj/error.hpp"
#include "fpproj/families.hpp"
#include "fpproj/family.hpp"
#include "fpproj/field.hpp"
#include "fpproj/fourier.hpp"
#include "fpproj/grassmannian.hpp"
#include "fpproj/pointset.hpp"
#include "fpproj/projection.hpp"
#include "fpproj/rational.hpp"
#include "fpproj/rng.hpp"
