// Copyright 2026 The codelm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "codelm/bpe.hpp"
#include "codelm/checkpoint.hpp"
#include "codelm/corpus.hpp"
#include "codelm/decoder.hpp"
#include "codelm/error.hpp"
#include "codelm/evaluation.hpp"
#include "codelm/gru_model.hpp"
#include "codelm/ngram.hpp"
#include "codelm/trainer.hpp"
