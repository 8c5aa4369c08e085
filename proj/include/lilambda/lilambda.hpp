#pragma once

#include "lilambda/errors.hpp"
#include "lilambda/precision.hpp"
#include "lilambda/summation.hpp"
#include "lilambda/numkernel.hpp"
#include "lilambda/quadrature.hpp"
#include "lilambda/zero_catalog.hpp"
#include "lilambda/secondary_zeta.hpp"
#include "lilambda/lambda_engines.hpp"
#include "lilambda/asymptotics.hpp"
