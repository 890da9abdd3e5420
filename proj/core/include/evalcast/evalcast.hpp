#pragma once

#include "evalcast/calibration.hpp"
#include "evalcast/csv.hpp"
#include "evalcast/datagen.hpp"
#include "evalcast/dataset.hpp"
#include "evalcast/error.hpp"
#include "evalcast/events.hpp"
#include "evalcast/plots.hpp"
#include "evalcast/random.hpp"
#include "evalcast/report.hpp"
#include "evalcast/scores.hpp"
#include "evalcast/time.hpp"
