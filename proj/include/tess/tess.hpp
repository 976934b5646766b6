#pragma once

#include "tess/agent.hpp"
#include "tess/config_io.hpp"
#include "tess/dataset.hpp"
#include "tess/eval.hpp"
#include "tess/intent_model.hpp"
#include "tess/pipeline.hpp"
#include "tess/split.hpp"
#include "tess/token.hpp"
#include "tess/tree.hpp"
