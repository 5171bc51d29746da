import { ApiClient } from "./api.js";
import { BuilderStore } from "./builderStore.js";
import { TranslateStore } from "./translateStore.js";
import { renderBuilder, renderTranslatePanel } from "./view.js";

const api = new ApiClient();
const builderStore = new BuilderStore(api);
const translateStore = new TranslateStore(api);

const builderRoot = document.getElementById("builder")!;
const translateRoot = document.getElementById("translate")!;

builderStore.subscribe(() => renderBuilder(builderRoot, builderStore));
translateStore.subscribe(() =>
  renderTranslatePanel(translateRoot, translateStore),
);

renderTranslatePanel(translateRoot, translateStore);
void builderStore.load();
