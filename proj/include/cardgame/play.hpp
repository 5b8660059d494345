#pragma once

#include "cardgame/game.hpp"
#include "cardgame/rng.hpp"
#include "cardgame/strategy.hpp"

namespace cardgame {

// Plays one full game. The strategy only ever receives GameRules and
// Observation values, never the deck.
inline Transcript play_game(const GameConfig& config, Strategy& strategy, Rng& deck_rng, Rng strategy_rng) {
  config.validate();
  DeckState deck = DeckState::shuffled(config, deck_rng);
  strategy.reset(rules_of(config), strategy_rng);
  Transcript tr{config, {}, {}};
  tr.g.reserve(config.rounds());
  tr.y.reserve(config.rounds());
  while (!deck.exhausted()) {
    const Label guess = strategy.next_guess();
    const RoundResult result = deck.play_round(guess);
    tr.g.push_back(guess);
    tr.y.push_back(result.correct ? 1 : 0);
    strategy.observe({guess, result.correct, result.revealed});
  }
  return tr;
}

// Streams derived from config.seed.
inline Transcript play_game(const GameConfig& config, Strategy& strategy) {
  Rng deck_rng(stream_seed(config.seed, Stream::Deck));
  return play_game(config, strategy, deck_rng, Rng(stream_seed(config.seed, Stream::Strategy)));
}

// Plays a prescribed deck order; used by exhaustive enumeration.
inline Transcript play_fixed_deck(const GameConfig& config, Strategy& strategy, DeckState deck, Rng strategy_rng = Rng{}) {
  strategy.reset(rules_of(config), strategy_rng);
  Transcript tr{config, {}, {}};
  while (!deck.exhausted()) {
    const Label guess = strategy.next_guess();
    const RoundResult result = deck.play_round(guess);
    tr.g.push_back(guess);
    tr.y.push_back(result.correct ? 1 : 0);
    strategy.observe({guess, result.correct, result.revealed});
  }
  return tr;
}

// Payoff-only game loop with a reusable deck buffer, for Monte Carlo.
class GameRunner {
 public:
  // Same streams and same result as payoff(play_game(config, strategy)).
  int play(const GameConfig& config, Strategy& strategy) {
    Rng deck_rng(stream_seed(config.seed, Stream::Deck));
    deck_.reshuffle(config, deck_rng);
    strategy.reset(rules_of(config), Rng(stream_seed(config.seed, Stream::Strategy)));
    int total = 0;
    while (!deck_.exhausted()) {
      const Label guess = strategy.next_guess();
      const RoundResult result = deck_.play_round(guess);
      total += result.correct;
      strategy.observe({guess, result.correct, result.revealed});
    }
    return total;
  }

 private:
  DeckState deck_;
};

}  // namespace cardgame
