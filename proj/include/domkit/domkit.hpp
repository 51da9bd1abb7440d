#pragma once

#include "domkit/basis.hpp"
#include "domkit/completion.hpp"
#include "domkit/constructors.hpp"
#include "domkit/coop.hpp"
#include "domkit/element.hpp"
#include "domkit/io.hpp"
#include "domkit/mappings.hpp"
