import { describe, expect, it } from "vitest";

import { ApiClient, ApiError, parseRosterEntries, splitCsvLine } from "../src/api.js";
import { MockServer } from "./mock.js";

describe("api client", () => {
  it("sends the token on mutations only", async () => {
    const server = new MockServer();
    server.on("GET", /\/pivot/, []);
    server.on("PUT", /\/students\//, { ok: true });
    const api = new ApiClient("", "secret", server.fetch);
    await api.getPivot({ group: "G1" });
    await api.putDelivery("s1", "G1:1", "2014-01-01");
    const [read, write] = server.requests;
    expect(read.headers["X-Api-Token"]).toBeUndefined();
    expect(write.headers["X-Api-Token"]).toBe("secret");
  });

  it("builds query strings, skipping empty values", async () => {
    const server = new MockServer();
    server.on("GET", /\/pivot/, []);
    const api = new ApiClient("", "", server.fetch);
    await api.getPivot({ group: "G1", course: 2, direction: "",
                         sort: "total_debts:desc" });
    expect(server.requests[0].url)
      .toBe("/pivot?group=G1&course=2&sort=total_debts%3Adesc");
  });

  it("raises ApiError with the server's error code", async () => {
    const server = new MockServer();
    server.on("GET", /\/students\/ghost/,
              () => ({ status: 404,
                       json: { error: "UnknownStudent", detail: "ghost" } }));
    const api = new ApiClient("", "", server.fetch);
    await expect(api.getStudent("ghost")).rejects.toMatchObject({
      status: 404,
      code: "UnknownStudent",
      detail: "ghost",
    });
    await expect(api.getStudent("ghost")).rejects.toBeInstanceOf(ApiError);
  });

  it("splits quoted csv cells", () => {
    expect(splitCsvLine('a,"b,c",d')).toEqual(["a", "b,c", "d"]);
    expect(splitCsvLine('x,"he said ""hi""",y')).toEqual(["x", 'he said "hi"', "y"]);
  });

  it("parses roster entry lines into curriculum entries", () => {
    const text = [
      "roster,G1,1",
      'entry,1,"Дисциплина, сложная",1,1,option1',
      "entry,2,Простая,1,2,option1",
      "student,s1,13/1,Ф,И,О",
    ].join("\n");
    expect(parseRosterEntries("G1", text)).toEqual([
      { ordinal: 1, entryId: "G1:1", discipline: "Дисциплина, сложная", semester: 1 },
      { ordinal: 2, entryId: "G1:2", discipline: "Простая", semester: 1 },
    ]);
  });
});
