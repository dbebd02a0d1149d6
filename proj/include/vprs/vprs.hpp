#pragma once

// Umbrella header: rough-set near-crash risk toolkit.

#include "vprs/approximation.hpp"
#include "vprs/csv.hpp"
#include "vprs/decision_table.hpp"
#include "vprs/entropy.hpp"
#include "vprs/error.hpp"
#include "vprs/evaluation.hpp"
#include "vprs/kinematics.hpp"
#include "vprs/model_io.hpp"
#include "vprs/pipeline.hpp"
#include "vprs/quantizer.hpp"
#include "vprs/ratio.hpp"
#include "vprs/reduct.hpp"
#include "vprs/rules.hpp"
#include "vprs/synth.hpp"
