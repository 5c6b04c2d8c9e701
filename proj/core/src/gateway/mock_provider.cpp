#include "lecturekit/gateway/mock_provider.hpp"

#include "lecturekit/common/text.hpp"
#include "lecturekit/content/bundle_io.hpp"
#include "lecturekit/imaging/image.hpp"
#include "lecturekit/layout/layout.hpp"

#include <algorithm>
#include <cmath>

namespace lecturekit::gateway
{

using nlohmann::json;

namespace
{

/// SplitMix64; fixed across platforms, unlike std distributions.
class MockRng
{
  public:
    explicit MockRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::size_t below(std::size_t n)
    {
        return n == 0 ? 0 : static_cast<std::size_t>(next() % n);
    }

    template <typename T>
    void shuffle(std::vector<T>& v)
    {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[below(i)]);
    }

  private:
    std::uint64_t state_;
};

std::string binding(const ProviderRequest& r, const std::string& name, const std::string& fallback = "")
{
    auto it = r.bindings.find(name);
    return it == r.bindings.end() ? fallback : it->second;
}

std::vector<std::string> splitList(const std::string& joined)
{
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= joined.size())
    {
        std::size_t comma = joined.find(',', pos);
        std::string item = text::trim(joined.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
        if (!item.empty())
            out.push_back(item);
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

/// Value after `prefix` on the first line that starts with it.
std::string lineValue(const std::string& body, const std::string& prefix)
{
    std::size_t pos = 0;
    while (pos < body.size())
    {
        std::size_t nl = body.find('\n', pos);
        std::string line = body.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
        if (line.rfind(prefix, 0) == 0)
            return text::trim(line.substr(prefix.size()));
        if (nl == std::string::npos)
            break;
        pos = nl + 1;
    }
    return "";
}

std::string replaceAll(std::string s, const std::string& from, const std::string& to)
{
    std::size_t pos = 0;
    while ((pos = s.find(from, pos)) != std::string::npos)
    {
        s.replace(pos, from.size(), to);
        pos += to.size();
    }
    return s;
}

double round2(double v)
{
    return std::round(v * 100.0) / 100.0;
}

const std::vector<std::string> kDistractors = {"Entropy",     "Momentum", "Photosynthesis", "Recursion",
                                               "Inflation",   "Osmosis",  "Plate tectonics", "Syntax trees",
                                               "Half-life",   "Supply and demand"};

const std::vector<std::string> kFormulaDistractors = {"E = mc^2", "F = ma", "a^2 + b^2 = c^2", "PV = nRT",
                                                      "y = mx + c"};

const std::vector<std::string> kFixtureKeywords = {"quark model diagram",   "atomic structure",
                                                   "neural network diagram", "vector field",
                                                   "decision boundary plot", "standard model particles"};

const std::vector<std::string> kStorySentences = {
    "Picture a Saturday afternoon where {interest} and {course} collide in the most unexpected way.",
    "A curious student once noticed that the rhythm of {interest} followed patterns straight out of {topic}.",
    "She grabbed a notebook, sketched a messy diagram, and started asking questions nobody around her had asked.",
    "Her friends laughed at first, but then they leaned in, because the idea was strangely convincing.",
    "Every time the crowd cheered, she imagined the numbers behind the noise shifting like ideas from class.",
    "It turned out that the same principles her lecturer loved were hiding inside her favorite hobby all along.",
    "She tested her hunch with a tiny experiment, using nothing more than a phone, a timer, and some patience.",
    "The first attempt failed spectacularly, which made everyone laugh even harder than before.",
    "Instead of giving up, she tweaked one small detail and tried again the very next morning.",
    "This time the pattern appeared clearly, and she realized that {topic} was not just a chapter in a textbook.",
    "Word spread quickly, and soon half the dormitory was arguing about {interest} using words from {course}.",
    "Someone made a poster, someone else made a terrible pun, and the whole thing became a small legend.",
    "The professor heard the story and smiled, saying that this was exactly why the subject matters.",
    "Science, after all, is mostly curiosity with good notes and a willingness to look a little silly.",
    "Years later, she still tells the tale whenever someone claims that {interest} has nothing to do with learning.",
    "So as you stretch and grab a sip of water, think about where {topic} might be hiding in your own day.",
    "Maybe it is in the way a ball curves, a song builds, or a recipe comes together just right.",
    "The best discoveries often start with a simple question asked at an unusual moment.",
    "Take a deep breath, roll your shoulders, and let your mind wander for a few more seconds.",
    "When we jump back in, you might notice the next idea clicks a little faster than you expected."};

std::string clarifyAnswer(const ProviderRequest& request, MockRng& rng)
{
    const std::string& user = request.userContent;
    std::string question = text::toLower(lineValue(user, user_content::kQuestion));
    std::string mode = text::toLower(lineValue(user, user_content::kMode));
    std::string interests = lineValue(user, user_content::kInterests);

    std::string slide = binding(request, "currentSlideContent");
    auto concepts = splitList(lineValue(slide, "Main concepts: "));
    std::string topic = !concepts.empty() ? concepts.front() : lineValue(slide, "Title: ");
    if (topic.empty())
        topic = "this idea";

    if (mode == "analogy")
    {
        auto list = splitList(interests);
        if (list.empty())
            return "Think of " + topic +
                   " like a busy city map. Each part has its own neighborhood and job, and together they keep "
                   "everything running.";
        std::string interest = list[rng.below(list.size())];
        if (text::toLower(interest).find("football") != std::string::npos)
            return "Think of the atom like a football stadium. The nucleus is a tiny ball on the center spot, and "
                   "the electrons are fans spread around the stands. Most of the stadium is empty space, just like "
                   "an atom.";
        return "Picture " + topic + " through " + interest + ". Each piece plays a role, just like in " + interest +
               ", and the whole only works when the parts cooperate.";
    }
    if (mode == "step")
        return "First, look at what " + topic + " describes on this slide. Next, connect it to the example the "
               "instructor just gave. Finally, check how it leads into the next point.";
    if (question.find("nucleus") != std::string::npos && question.find("nucleon") != std::string::npos)
        return "The nucleus is the dense center of an atom. Nucleons are the particles inside it, namely protons "
               "and neutrons. So the nucleus is the whole core, and nucleons are its building blocks.";

    static const std::vector<std::string> answers = {
        "Great question! {topic} is the central idea here. It ties directly to what the instructor just described.",
        "Here is the short version: {topic} explains the main point of this slide. Keep it in mind for the next "
        "example.",
        "Think of {topic} as the key step on this slide. Everything else shown here builds on it."};
    return replaceAll(answers[rng.below(answers.size())], "{topic}", topic);
}

} // namespace

const std::vector<MockSlideTopic>& mockSlideTopics()
{
    static const std::vector<MockSlideTopic> table = {
        {"The Standard Model", {"Quarks", "Leptons", "Gauge bosons"}, {}, {"Particle table"}},
        {"Perceptron", {"Weights", "Bias term", "Decision boundary"}, {"w · x + b"}, {}},
        {"Atomic Structure", {"Nucleus", "Nucleons", "Electrons"}, {}, {"Atom diagram"}},
        {"Fundamental Forces", {"Strong force", "Gluons", "Electromagnetic force", "Photon"}, {}, {}},
        {"Linear Transformations", {"Addition", "Scalar multiplication"}, {"T(u + v) = T(u) + T(v)"}, {}},
        {"Gradient Descent", {"Learning rate", "Loss surface"}, {"w = w - η ∇L(w)"}, {"Loss curve"}},
    };
    return table;
}

std::uint64_t mockSeed(const ProviderRequest& request)
{
    std::uint64_t h = text::fnv1a(toString(request.templateId));
    for (const auto& [k, v] : request.bindings)
    {
        h = text::fnv1a(k, h);
        h = text::fnv1a("=", h);
        h = text::fnv1a(v, h);
        h = text::fnv1a("\x1f", h);
    }
    return h;
}

void MockProvider::script(TemplateId id, std::string raw)
{
    std::lock_guard lock(mutex_);
    scripted_[id].push_back(std::move(raw));
}

void MockProvider::failNext(TemplateId id, int count)
{
    std::lock_guard lock(mutex_);
    failures_[id] += count;
}

void MockProvider::registerImageLabel(std::uint64_t imageHash, std::string keyword)
{
    std::lock_guard lock(mutex_);
    labels_.emplace_back(imageHash, std::move(keyword));
}

int MockProvider::callCount(TemplateId id) const
{
    std::lock_guard lock(mutex_);
    auto it = calls_.find(id);
    return it == calls_.end() ? 0 : it->second;
}

std::vector<ProviderRequest> MockProvider::history() const
{
    std::lock_guard lock(mutex_);
    return history_;
}

std::string MockProvider::generate(const ProviderRequest& request, const std::string& /*renderedPrompt*/)
{
    {
        std::lock_guard lock(mutex_);
        ++calls_[request.templateId];
        history_.push_back(request);
        if (auto& f = failures_[request.templateId]; f > 0)
        {
            --f;
            throw TransportError("mock transport failure");
        }
        if (auto& q = scripted_[request.templateId]; !q.empty())
        {
            std::string raw = std::move(q.front());
            q.pop_front();
            return raw;
        }
    }

    switch (request.templateId)
    {
    case TemplateId::SameSlide:
        return sameSlide(request);
    case TemplateId::SlideExtract:
        return slideExtract(request);
    case TemplateId::QuizGen:
        return quizGen(request);
    case TemplateId::HighlightGen:
        return highlightGen(request);
    case TemplateId::Clarify:
        return clarify(request);
    case TemplateId::VisualKeywords:
        return visualKeywords(request);
    case TemplateId::BreakStory:
        return breakStory(request);
    }
    throw TransportError("unknown template");
}

std::string MockProvider::sameSlide(const ProviderRequest& request) const
{
    if (request.attachments.size() < 2)
        throw TransportError("sameSlide needs two frames");
    auto a = imaging::perceptualHash(imaging::loadGray(request.attachments[0]));
    auto b = imaging::perceptualHash(imaging::loadGray(request.attachments[1]));
    int d = imaging::hammingDistance(a, b);

    json reply;
    if (d == 0)
    {
        reply = {{"isSameSlide", true},
                 {"confidence", 1.0},
                 {"reason", "The frames are visually identical."},
                 {"contentChange", {{"type", "cursor"}, {"description", "No visible change."}}}};
    }
    else if (d <= kAnnotationThreshold)
    {
        reply = {{"isSameSlide", true},
                 {"confidence", round2(1.0 - d / 64.0)},
                 {"reason", "Core layout is unchanged; only local marks differ."},
                 {"contentChange", {{"type", "annotation"}, {"description", "Local marks were added."}}}};
    }
    else
    {
        reply = {{"isSameSlide", false},
                 {"confidence", round2(std::min(1.0, 0.5 + d / 64.0))},
                 {"reason", "The layout and content changed substantially."},
                 {"contentChange", {{"type", "new_slide"}, {"description", "A different slide is shown."}}}};
    }
    return reply.dump();
}

std::string MockProvider::slideExtract(const ProviderRequest& request) const
{
    auto image = imaging::loadGray(request.attachments.at(0));
    std::uint64_t hash = imaging::perceptualHash(image);
    bool blank = imaging::intensityStdDev(image) < 2.0;

    json reply = {{"hasHumanPresence", false}, {"hasAnnotations", false}, {"contentFingerprint", text::toHex(hash)}};
    if (blank)
    {
        reply["title"] = "Untitled slide";
        reply["mainTopics"] = json::array();
        reply["description"] = "A blank frame with no visible content.";
        return reply.dump();
    }
    const auto& table = mockSlideTopics();
    const auto& row = table[static_cast<std::size_t>(hash % table.size())];
    reply["title"] = row.title;
    reply["mainTopics"] = row.topics;
    reply["description"] = "The slide introduces " + row.title + ", covering " + text::join(row.topics, ", ") + ".";
    if (!row.equations.empty())
        reply["equations"] = row.equations;
    if (!row.diagrams.empty())
        reply["diagrams"] = row.diagrams;
    return reply.dump();
}

std::string MockProvider::quizGen(const ProviderRequest& request) const
{
    MockRng rng(mockSeed(request));
    int count = std::max(0, std::stoi(binding(request, "questionsPerSection", "0")));
    std::string diff = binding(request, "difficulty", "3");
    int level = content::difficultyFromLabel(diff).value_or(3);

    std::string title = binding(request, "title", "this slide");
    auto concepts = splitList(binding(request, "mainConcepts"));
    if (concepts.empty())
        concepts.push_back(title.empty() ? "this slide" : title);
    auto equations = splitList(binding(request, "equations"));

    static const char* kStems[] = {
        "Which term appears as a main answer on the slide '{title}'?",
        "Which answer is the slide '{title}' mainly about?",
        "Which answer would you apply to solve a problem about '{title}'?",
        "Which answer best explains the relationships discussed in '{title}'?",
        "Which answer is essential when evaluating an argument built on '{title}'?",
    };

    json questions = json::array();
    for (int i = 0; i < count; ++i)
    {
        const std::string answer = concepts[(static_cast<std::size_t>(i) + rng.below(concepts.size())) % concepts.size()];
        json q;
        q["difficulty"] = level;

        if (level == 3 && i == 0 && !equations.empty())
        {
            std::string eq = equations.front();
            std::vector<std::string> options = {eq};
            for (const auto& d : kFormulaDistractors)
                if (d != eq && options.size() < 4)
                    options.push_back(d);
            rng.shuffle(options);
            q["type"] = "multiple-choice";
            q["question"] = "Which formula is presented on the slide about " + title + "?";
            q["options"] = options;
            q["correctAnswer"] = eq;
            q["explanation"] = "The slide states " + eq + " as the key relation for " + title + ".";
            questions.push_back(std::move(q));
            continue;
        }

        switch ((level + i) % 3)
        {
        case 0: {
            std::vector<std::string> options = {answer};
            std::vector<std::string> pool = kDistractors;
            rng.shuffle(pool);
            for (const auto& d : pool)
                if (options.size() < 4 && text::normalize(d) != text::normalize(answer))
                    options.push_back(d);
            rng.shuffle(options);
            q["type"] = "multiple-choice";
            q["question"] = replaceAll(kStems[level - 1], "{title}", title);
            q["options"] = options;
            q["correctAnswer"] = answer;
            q["explanation"] = answer + " is one of the main concepts covered in " + title + ".";
            break;
        }
        case 1:
            q["type"] = "true-false";
            q["question"] = "True or false: " + answer + " is discussed in the section '" + title + "'.";
            q["options"] = json::array();
            q["correctAnswer"] = "True";
            q["explanation"] = "The section on " + title + " explicitly discusses " + answer + ".";
            break;
        default:
            q["type"] = "fill-blank";
            q["question"] = "Complete this statement: The section '" + title + "' introduces _____.";
            q["options"] = json::array();
            q["correctAnswer"] = answer;
            q["explanation"] = answer + " is introduced in this section.";
            break;
        }
        questions.push_back(std::move(q));
    }
    return json{{"questions", questions}}.dump(2);
}

std::string MockProvider::highlightGen(const ProviderRequest& request) const
{
    auto boxes = layout::detectContentBoxes(imaging::loadGray(request.attachments.at(0)));
    if (boxes.size() > 8)
        boxes.resize(8);

    std::vector<std::string> lines;
    std::string transcript = binding(request, "slideTranscript");
    std::size_t pos = 0;
    while (pos <= transcript.size())
    {
        std::size_t nl = transcript.find('\n', pos);
        std::string line = text::trim(transcript.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos));
        if (!line.empty())
            lines.push_back(line);
        if (nl == std::string::npos)
            break;
        pos = nl + 1;
    }

    auto scale = [](double v) { return static_cast<int>(std::lround(v * kBoxReference)); };
    json reply = json::array();
    for (std::size_t i = 0; i < boxes.size(); ++i)
    {
        const auto& b = boxes[i];
        reply.push_back({{"box_2d", {scale(b.x0), scale(b.y0), scale(b.x1), scale(b.y1)}},
                         {"relavant_transcript", i < lines.size() ? lines[i] : ""}});
    }
    return "```json\n" + reply.dump(4) + "\n```";
}

std::string MockProvider::clarify(const ProviderRequest& request) const
{
    MockRng rng(mockSeed(request) ^ text::fnv1a(request.userContent));
    return clarifyAnswer(request, rng);
}

std::string MockProvider::visualKeywords(const ProviderRequest& request) const
{
    auto image = imaging::loadGray(request.attachments.at(0));
    if (imaging::intensityStdDev(image) < 2.0)
        return R"({"keywords":""})";
    std::uint64_t hash = imaging::perceptualHash(image);
    {
        std::lock_guard lock(mutex_);
        for (const auto& [labelHash, keyword] : labels_)
            if (imaging::hammingDistance(labelHash, hash) <= 4)
                return json{{"keywords", keyword}}.dump();
    }
    return json{{"keywords", kFixtureKeywords[static_cast<std::size_t>(hash % kFixtureKeywords.size())]}}.dump();
}

std::string MockProvider::breakStory(const ProviderRequest& request) const
{
    MockRng rng(mockSeed(request));
    long minutes = std::max(1L, std::stol(binding(request, "breakDuration", "1")));
    const std::size_t target = static_cast<std::size_t>(minutes) * 150;

    auto interests = splitList(binding(request, "userInterests"));
    std::string interest = interests.empty() ? "everyday life" : interests[rng.below(interests.size())];
    std::string course = binding(request, "currentVideoName", "this course");
    std::string topic = lineValue(binding(request, "currentSlideContent"), "Title: ");
    if (topic.empty())
        topic = course;

    std::vector<std::size_t> order(kStorySentences.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;

    std::string story;
    std::size_t words = 0;
    std::size_t cursor = order.size();
    while (words < target)
    {
        if (cursor == order.size())
        {
            rng.shuffle(order);
            cursor = 0;
        }
        std::string sentence = kStorySentences[order[cursor++]];
        sentence = replaceAll(sentence, "{interest}", interest);
        sentence = replaceAll(sentence, "{course}", course);
        sentence = replaceAll(sentence, "{topic}", topic);
        if (!story.empty())
            story.push_back(' ');
        story += sentence;
        words += text::wordCount(sentence);
    }
    return story;
}

} // namespace lecturekit::gateway
