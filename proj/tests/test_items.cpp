#include "semrl/items.hpp"

#include "semrl/error.hpp"

#include <doctest.h>

using namespace semrl;

TEST_CASE("item strings follow the stable grammar") {
    CHECK(Item::measurement("s1", "pressure", "43").str() == "m(s1,pressure,43)");
    CHECK(Item::relation("P1", "connected_to", "J1").str() == "r(P1,connected_to,J1)");
    CHECK(Item::attribute("P1", "Pipe", "length", 3).str() == "a(P1,length,3)");
}

TEST_CASE("parse inverts str()") {
    for (const Item& item : {Item::measurement("Junction_1", "demand", "38.5"),
                             Item::relation("WaterPressureSensor_1", "placed_in", "Junction_1"),
                             Item::attribute("Pipe_2", "", "diameter", 0)}) {
        Item back = Item::parse(item.str());
        CHECK(back == item);
        CHECK(back.str() == item.str());
    }
    CHECK_THROWS_AS(Item::parse("x(a,b,c)"), ParseError);
    CHECK_THROWS_AS(Item::parse("m(a,b)"), ParseError);
    CHECK_THROWS_AS(Item::parse("m(a,b,c,d)"), ParseError);
    CHECK_THROWS_AS(Item::parse("a(p,attr,notanumber)"), ParseError);
    CHECK_THROWS_AS(Item::parse(""), ParseError);
}

TEST_CASE("ordering is total and the class annotation is not identity") {
    Item a = Item::attribute("P1", "Pipe", "length", 1);
    Item b = Item::attribute("P1", "", "length", 1);
    CHECK(a == b);  // parsed-back items compare equal to pipeline items

    Item m = Item::measurement("s", "pressure", "1");
    Item r = Item::relation("s", "placed_in", "J");
    CHECK(m < r);  // kind ranks measurements first
    CHECK(Item::measurement("a", "pressure", "1") < Item::measurement("b", "pressure", "1"));
}

TEST_CASE("transactions behave as sorted sets") {
    Transaction t;
    t.items = {Item::measurement("b", "pressure", "1"), Item::measurement("a", "pressure", "1"),
               Item::measurement("b", "pressure", "1")};
    normalize(t.items);
    REQUIRE(t.items.size() == 2);
    CHECK(t.items[0].subject == "a");
    CHECK(t.contains(Item::measurement("a", "pressure", "1")));
    CHECK_FALSE(t.contains(Item::measurement("c", "pressure", "1")));
    CHECK(t.contains_all(t.items));
}
