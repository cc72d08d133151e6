import { ApiClient } from "./api";
import { App } from "./app";
import { apiBaseUrl } from "./config";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app container");
new App(new ApiClient(apiBaseUrl()), root).mount();
