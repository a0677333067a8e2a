#pragma once

#include "undistort/certificate.hpp"
#include "undistort/cocycle.hpp"
#include "undistort/errors.hpp"
#include "undistort/format.hpp"
#include "undistort/homeo.hpp"
#include "undistort/measure.hpp"
#include "undistort/numbers.hpp"
#include "undistort/pl_map.hpp"
#include "undistort/quasi.hpp"
#include "undistort/report.hpp"
#include "undistort/rotation.hpp"
#include "undistort/scenario.hpp"
#include "undistort/space.hpp"
#include "undistort/wordgeom.hpp"
