// Display labels. Russian is the default, matching the original
// paperwork; English is the fallback for every key.

export type Locale = "ru" | "en";

let current: Locale = "ru";

const TABLES: Record<Locale, Record<string, string>> = {
  ru: {
    "app.title": "Автоматизированное рабочее место деканата",
    "nav.pivot": "Сводная таблица",
    "nav.mastery": "Освоение дисциплин",
    "nav.series": "График долгов",
    "nav.movement": "Движение контингента",
    "nav.audit": "Поиск ошибок",
    "pivot.name": "ФИО",
    "pivot.group": "группа",
    "pivot.course": "курс",
    "pivot.mean": "Ср. балл",
    "pivot.total": "Итого",
    "pivot.last": "посл. сдача",
    "pivot.semester": "семестр",
    "pivot.funding": "б/к",
    "pivot.sex": "м/ж",
    "pivot.edit": "Правка дат",
    "pivot.editPersonal": "Личные данные",
    "filter.all": "Все студенты",
    "filter.status": "Статус",
    "filter.active": "обучающиеся",
    "filter.leave": "академический отпуск",
    "filter.expelled": "отчисленные",
    "filter.course": "Курс",
    "filter.direction": "Направление",
    "filter.group": "Группа",
    "filter.funding": "Форма обучения",
    "filter.budget": "бюджет",
    "filter.contract": "контракт",
    "filter.sex": "Пол",
    "filter.male": "мужской",
    "filter.female": "женский",
    "filter.any": "все",
    "filter.asOf": "На дату",
    "filter.apply": "Показать",
    "editor.title": "Редактирование дат сдачи",
    "editor.viewing": "просмотр",
    "editor.insert": "вставка",
    "editor.remove": "удаление",
    "editor.mode": "Режим",
    "editor.date": "Дата",
    "editor.save": "Сохранить и закрыть",
    "editor.exit": "Выход",
    "editor.failed": "не сохранено",
    "mastery.group": "Группа",
    "mastery.semester": "Семестр",
    "mastery.discipline": "Дисциплина",
    "mastery.percent": "%",
    "mastery.notPassed": "Не сдано",
    "mastery.total": "Всего",
    "series.from": "С",
    "series.to": "По",
    "series.step": "Шаг, дней",
    "series.build": "Построить",
    "series.debts": "Долги",
    "movement.enroll": "Зачисление",
    "movement.expel": "Отчисление",
    "movement.transfer": "Перевод",
    "movement.leave_start": "Уход в академический отпуск",
    "movement.leave_end": "Выход из академического отпуска",
    "movement.course_advance": "Перевод на следующий курс",
    "movement.student": "Студент",
    "movement.date": "Дата",
    "movement.reason": "Причина",
    "movement.group": "Группа",
    "movement.fromGroup": "Из группы",
    "movement.toGroup": "В группу",
    "movement.until": "До",
    "movement.surname": "Фамилия",
    "movement.givenName": "Имя",
    "movement.patronymic": "Отчество",
    "movement.card": "№ студ. билета",
    "movement.submit": "Выполнить",
    "movement.log": "Журнал движения",
    "movement.report": "Отчет о движении контингента",
    "movement.month": "Месяц",
    "movement.download": "Скачать CSV",
    "report.kind": "Показатель",
    "report.opening": "На начало",
    "report.arrived": "Прибыло",
    "report.left": "Выбыло",
    "report.transferred": "Переведено",
    "report.closing": "На конец",
    "report.total": "Итого",
    "report.budget_male": "бюджет, муж.",
    "report.budget_female": "бюджет, жен.",
    "report.contract_male": "контракт, муж.",
    "report.contract_female": "контракт, жен.",
    "audit.rule": "Правило",
    "audit.student": "Студент",
    "audit.due": "Срок",
    "audit.detail": "Описание",
    "audit.overdue_leave_exit": "просрочен выход из академического отпуска",
    "audit.overdue_graduation": "просрочено окончание обучения",
    "audit.overdue_course_advance": "просрочен перевод на следующий курс",
    "personal.title": "Личные данные студента",
    "personal.meanScore": "Ср. балл",
    "common.empty": "нет данных",
  },
  en: {
    "app.title": "Teaching department workplace",
    "nav.pivot": "Pivot table",
    "nav.mastery": "Discipline mastery",
    "nav.series": "Debt chart",
    "nav.movement": "Contingent movement",
    "nav.audit": "Error search",
    "pivot.name": "Name",
    "pivot.group": "group",
    "pivot.course": "course",
    "pivot.mean": "Mean score",
    "pivot.total": "Total",
    "pivot.last": "last delivery",
    "pivot.semester": "semester",
    "pivot.funding": "funding",
    "pivot.sex": "sex",
    "pivot.edit": "Edit dates",
    "pivot.editPersonal": "Personal data",
    "filter.all": "All students",
    "filter.status": "Status",
    "filter.active": "active",
    "filter.leave": "academic leave",
    "filter.expelled": "expelled",
    "filter.course": "Course",
    "filter.direction": "Direction",
    "filter.group": "Group",
    "filter.funding": "Funding",
    "filter.budget": "budget",
    "filter.contract": "contract",
    "filter.sex": "Sex",
    "filter.male": "male",
    "filter.female": "female",
    "filter.any": "any",
    "filter.asOf": "As of",
    "filter.apply": "Apply",
    "editor.title": "Delivery date editing",
    "editor.viewing": "viewing",
    "editor.insert": "insert",
    "editor.remove": "remove",
    "editor.mode": "Mode",
    "editor.date": "Date",
    "editor.save": "Save and close",
    "editor.exit": "Exit",
    "editor.failed": "not saved",
    "mastery.group": "Group",
    "mastery.semester": "Semester",
    "mastery.discipline": "Discipline",
    "mastery.percent": "%",
    "mastery.notPassed": "Not passed",
    "mastery.total": "Total",
    "series.from": "From",
    "series.to": "To",
    "series.step": "Step, days",
    "series.build": "Build",
    "series.debts": "Debts",
    "movement.enroll": "Enroll",
    "movement.expel": "Expel",
    "movement.transfer": "Transfer",
    "movement.leave_start": "Start academic leave",
    "movement.leave_end": "End academic leave",
    "movement.course_advance": "Advance course",
    "movement.student": "Student",
    "movement.date": "Date",
    "movement.reason": "Reason",
    "movement.group": "Group",
    "movement.fromGroup": "From group",
    "movement.toGroup": "To group",
    "movement.until": "Until",
    "movement.surname": "Surname",
    "movement.givenName": "Given name",
    "movement.patronymic": "Patronymic",
    "movement.card": "Card number",
    "movement.submit": "Submit",
    "movement.log": "Movement log",
    "movement.report": "Contingent movement report",
    "movement.month": "Month",
    "movement.download": "Download CSV",
    "report.kind": "Indicator",
    "report.opening": "Opening",
    "report.arrived": "Arrived",
    "report.left": "Left",
    "report.transferred": "Transferred",
    "report.closing": "Closing",
    "report.total": "Total",
    "report.budget_male": "budget, male",
    "report.budget_female": "budget, female",
    "report.contract_male": "contract, male",
    "report.contract_female": "contract, female",
    "audit.rule": "Rule",
    "audit.student": "Student",
    "audit.due": "Due",
    "audit.detail": "Detail",
    "audit.overdue_leave_exit": "overdue leave exit",
    "audit.overdue_graduation": "overdue graduation",
    "audit.overdue_course_advance": "overdue course advance",
    "personal.title": "Student personal data",
    "personal.meanScore": "Mean score",
    "common.empty": "no data",
  },
};

export function setLocale(locale: Locale): void {
  current = locale;
}

export function getLocale(): Locale {
  return current;
}

export function t(key: string): string {
  return TABLES[current][key] ?? TABLES.en[key] ?? key;
}
