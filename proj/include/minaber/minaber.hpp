#pragma once

#include "minaber/aberration.hpp"
#include "minaber/aliasing.hpp"
#include "minaber/basis.hpp"
#include "minaber/design.hpp"
#include "minaber/errors.hpp"
#include "minaber/indicator.hpp"
#include "minaber/io.hpp"
#include "minaber/isomorphism.hpp"
#include "minaber/search.hpp"
