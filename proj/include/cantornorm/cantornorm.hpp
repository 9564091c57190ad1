#pragma once

#include "cantornorm/errors.hpp"
#include "cantornorm/rational.hpp"
#include "cantornorm/oracle.hpp"
#include "cantornorm/generators.hpp"
#include "cantornorm/programs.hpp"
#include "cantornorm/cantor.hpp"
#include "cantornorm/construction.hpp"
#include "cantornorm/normality.hpp"
#include "cantornorm/config.hpp"
#include "cantornorm/serialize.hpp"
