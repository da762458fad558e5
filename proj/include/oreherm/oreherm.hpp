#pragma once

#include "oreherm/errors.hpp"
#include "oreherm/field.hpp"
#include "oreherm/ftlinalg.hpp"
#include "oreherm/linsys.hpp"
#include "oreherm/matrix.hpp"
#include "oreherm/ore.hpp"
#include "oreherm/random.hpp"
#include "oreherm/text.hpp"
#include "oreherm/verify.hpp"
