#pragma once
// Everything, for tools and quick experiments.

#include "ontorec/annotation.hpp"
#include "ontorec/config.hpp"
#include "ontorec/eval.hpp"
#include "ontorec/extract.hpp"
#include "ontorec/http.hpp"
#include "ontorec/index.hpp"
#include "ontorec/kbase.hpp"
#include "ontorec/kbase_json.hpp"
#include "ontorec/lexicon.hpp"
#include "ontorec/pattern.hpp"
#include "ontorec/profile.hpp"
#include "ontorec/recommend.hpp"
#include "ontorec/store.hpp"
