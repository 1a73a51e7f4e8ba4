#pragma once

#include "ssd/csv.hpp"
#include "ssd/design_ops.hpp"
#include "ssd/es2.hpp"
#include "ssd/hadamard.hpp"
#include "ssd/lemmas.hpp"
#include "ssd/rational.hpp"
#include "ssd/sign_matrix.hpp"
#include "ssd/spectral.hpp"
#include "ssd/subsets.hpp"
#include "ssd/verification.hpp"
#include "ssd/wu_builder.hpp"
