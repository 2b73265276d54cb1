#pragma once

#include "gleake/centrality.hpp"
#include "gleake/config.hpp"
#include "gleake/corpus_io.hpp"
#include "gleake/dense_vector.hpp"
#include "gleake/error.hpp"
#include "gleake/eval_bench.hpp"
#include "gleake/global_embedding.hpp"
#include "gleake/graph_engine.hpp"
#include "gleake/local_embedding.hpp"
#include "gleake/pipeline.hpp"
#include "gleake/pos_tagger.hpp"
#include "gleake/stemmer.hpp"
#include "gleake/text_pipeline.hpp"
