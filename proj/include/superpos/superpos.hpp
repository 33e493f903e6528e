#pragma once

#include "superpos/analysis.hpp"
#include "superpos/bolt2.hpp"
#include "superpos/detect.hpp"
#include "superpos/errors.hpp"
#include "superpos/harness.hpp"
#include "superpos/io.hpp"
#include "superpos/model.hpp"
#include "superpos/pathcore.hpp"
#include "superpos/rational.hpp"
#include "superpos/ratmat.hpp"
#include "superpos/represent.hpp"
#include "superpos/tau.hpp"
