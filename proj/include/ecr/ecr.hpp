#pragma once

#include "ecr/asymptotics.hpp"
#include "ecr/bigint.hpp"
#include "ecr/conversion.hpp"
#include "ecr/error.hpp"
#include "ecr/figures.hpp"
#include "ecr/query.hpp"
#include "ecr/report.hpp"
#include "ecr/spectrum.hpp"
#include "ecr/tradeoff.hpp"
#include "ecr/validate.hpp"
#include "ecr/version.hpp"
