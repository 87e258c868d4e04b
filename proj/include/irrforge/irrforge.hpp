#pragma once

#include "irrforge/core.hpp"
#include "irrforge/numkernel.hpp"
#include "irrforge/staralg.hpp"
#include "irrforge/oracle.hpp"
#include "irrforge/generators.hpp"
#include "irrforge/similarity.hpp"
