#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace storyline {

// The five leaf components a story decomposes into: three textual
// (people, places, event words) and two visual (face / object cluster ids).
enum class Component { Who = 0, Where = 1, What = 2, Face = 3, Obj = 4 };

inline constexpr std::array<Component, 5> kAllComponents = {
    Component::Who, Component::Where, Component::What,
    Component::Face, Component::Obj};
inline constexpr std::array<Component, 3> kTextComponents = {
    Component::Who, Component::Where, Component::What};
inline constexpr std::array<Component, 2> kImageComponents = {
    Component::Face, Component::Obj};

const char* component_name(Component c);

// Cross-component pair a joint (text, visual) co-occurrence belongs to.
enum class JointTag { FaceWho = 0, FaceWhat = 1, ObjWhat = 2 };

const char* joint_tag_name(JointTag t);
bool joint_tag_from_name(const std::string& name, JointTag* out);

using WordPair = std::pair<std::string, std::string>;

struct JointPair {
  JointTag tag;
  std::string text_word;
  std::string visual_word;

  friend bool operator==(const JointPair& a, const JointPair& b) {
    return a.tag == b.tag && a.text_word == b.text_word &&
           a.visual_word == b.visual_word;
  }
};

// One segmented news story, already tokenized into component word lists.
// Duplicates are allowed everywhere; list lengths are the component counts.
struct Story {
  std::string id;
  int window = 0;

  std::vector<std::string> who;
  std::vector<std::string> where;
  std::vector<std::string> what;
  std::vector<std::string> face;
  std::vector<std::string> obj;

  std::vector<WordPair> tt_pairs;     // (text, text), different components
  std::vector<WordPair> ii_pairs;     // (face, obj)
  std::vector<JointPair> joint_pairs; // (text, visual), tagged

  const std::vector<std::string>& component(Component c) const;
  std::vector<std::string>& component(Component c);

  int count(Component c) const { return static_cast<int>(component(c).size()); }
  int text_count() const {
    return count(Component::Who) + count(Component::Where) +
           count(Component::What);
  }
  int image_count() const {
    return count(Component::Face) + count(Component::Obj);
  }
};

using Corpus = std::vector<Story>;

// Throws std::invalid_argument if a pair references a word missing from the
// story's component lists, or if ids are empty/duplicated across the corpus.
void validate_story(const Story& story);
void validate_corpus(const Corpus& corpus);

}  // namespace storyline
