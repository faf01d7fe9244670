#pragma once

#include "locinfer/eval.hpp"
#include "locinfer/indexed_heap.hpp"
#include "locinfer/ingest.hpp"
#include "locinfer/locality.hpp"
#include "locinfer/multigraph.hpp"
#include "locinfer/pipeline.hpp"
#include "locinfer/random.hpp"
#include "locinfer/synth.hpp"
#include "locinfer/theory.hpp"
