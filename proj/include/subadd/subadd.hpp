#pragma once

#include "subadd/analytic.hpp"
#include "subadd/certificate.hpp"
#include "subadd/cone.hpp"
#include "subadd/errors.hpp"
#include "subadd/interval.hpp"
#include "subadd/oracles.hpp"
#include "subadd/real.hpp"
#include "subadd/search.hpp"
#include "subadd/serialize.hpp"
#include "subadd/suite.hpp"
