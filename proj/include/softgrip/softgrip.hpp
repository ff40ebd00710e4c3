#pragma once

#include "softgrip/errors.hpp"
#include "softgrip/numerics.hpp"
#include "softgrip/material.hpp"
#include "softgrip/chamber.hpp"
#include "softgrip/gripper.hpp"
#include "softgrip/grasp.hpp"
#include "softgrip/calibration.hpp"
#include "softgrip/config.hpp"
#include "softgrip/io.hpp"
#include "softgrip/validate.hpp"
