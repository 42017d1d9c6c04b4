#pragma once

#include <farpoint/canonicalize.hpp>
#include <farpoint/cut_locus.hpp>
#include <farpoint/geometry.hpp>
#include <farpoint/orbit_metric.hpp>
#include <farpoint/oracle.hpp>
#include <farpoint/report.hpp>
#include <farpoint/surface.hpp>
#include <farpoint/svg.hpp>
