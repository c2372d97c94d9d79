#pragma once

#include "ktorus/abelian_group.hpp"
#include "ktorus/bimodule.hpp"
#include "ktorus/dilation.hpp"
#include "ktorus/errors.hpp"
#include "ktorus/exterior.hpp"
#include "ktorus/io.hpp"
#include "ktorus/ktheory.hpp"
#include "ktorus/laurent.hpp"
#include "ktorus/linalg.hpp"
#include "ktorus/matrix.hpp"
#include "ktorus/random.hpp"
#include "ktorus/smith.hpp"
#include "ktorus/verify.hpp"
