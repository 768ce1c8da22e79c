#pragma once

#include "rascal/error.hpp"
#include "rascal/data/schema.hpp"
#include "rascal/data/dataset.hpp"
#include "rascal/data/csv.hpp"
#include "rascal/data/uci.hpp"
#include "rascal/rules/literal.hpp"
#include "rascal/rules/ast.hpp"
#include "rascal/rules/parser.hpp"
#include "rascal/rules/normalize.hpp"
#include "rascal/rules/operationalize.hpp"
#include "rascal/rules/format.hpp"
#include "rascal/scoring.hpp"
#include "rascal/generate.hpp"
#include "rascal/prune.hpp"
#include "rascal/pipeline/refine.hpp"
#include "rascal/eval/knn.hpp"
#include "rascal/eval/split.hpp"
#include "rascal/eval/experiment.hpp"
#include "rascal/eval/synthetic.hpp"
